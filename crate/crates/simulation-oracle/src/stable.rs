use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use rand_distr::{Distribution, Exp1};

/// Increments of the spectrally negative α-stable process with
/// E[e^{sX_t}] = e^{tκs^α}, by the Chambers–Mallows–Stuck transform.
#[derive(Debug, Clone, Copy)]
pub struct StableIncrement {
    alpha: f64,
    /// α·B with B = arctan(−tan(πα/2))/α.
    shift: f64,
    /// σ·S·dt^{1/α}.
    factor: f64,
}

impl StableIncrement {
    /// Law of X_dt for ψ(s) = κ s^α, 1 < α < 2.
    pub fn new(alpha: f64, kappa: f64, dt: f64) -> Self {
        let tan = (FRAC_PI_2 * alpha).tan();
        let shift = (-tan).atan();
        let s = (1.0 + tan * tan).powf(0.5 / alpha);
        // E[e^{sX}] = exp(σ^α s^α / |cos(πα/2)|) for the totally left-skewed law
        let sigma = (kappa * (FRAC_PI_2 * alpha).cos().abs()).powf(1.0 / alpha);
        StableIncrement { alpha, shift, factor: sigma * s * dt.powf(1.0 / alpha) }
    }
}

impl Distribution<f64> for StableIncrement {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let al = self.alpha;
        let v = loop {
            let u: f64 = rng.random();
            if u > 0.0 {
                break PI * (u - 0.5);
            }
        };
        let w: f64 = loop {
            let w: f64 = Exp1.sample(rng);
            if w > 0.0 {
                break w;
            }
        };
        let av = al * v + self.shift;
        self.factor * av.sin() / v.cos().powf(1.0 / al) * ((v - av).cos() / w).powf((1.0 - al) / al)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn jumps_are_downward() {
        // the lower tail is heavy, the upper tail light
        let d = StableIncrement::new(1.5, 1.0, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let xs: Vec<f64> = (0..100_000).map(|_| d.sample(&mut rng)).collect();
        let low = xs.iter().cloned().fold(f64::INFINITY, f64::min);
        let high = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(low < -50.0 && high < 10.0, "{low} {high}");
        assert!(xs.iter().sum::<f64>().abs() / 1e5 < 0.2);
    }
}
