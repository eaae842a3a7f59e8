//! Exponential integral E1.

use crate::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// E1(z) = ∫_z^∞ e^{-u}/u du for z > 0.
///
/// Power series on (0, 1], Lentz continued fraction above.
pub fn exp_integral_e1(z: f64) -> Result<f64> {
    if z.is_nan() || z <= 0.0 {
        return Err(Error::Domain { what: "E1 argument", value: z });
    }
    if z <= 1.0 {
        Ok(series(z))
    } else if z > 745.0 {
        Ok(0.0)
    } else {
        Ok(continued_fraction(z)? * (-z).exp())
    }
}

/// e^z E1(z), finite for large z where E1 itself underflows.
pub fn exp_integral_e1_scaled(z: f64) -> Result<f64> {
    if z.is_nan() || z <= 0.0 {
        return Err(Error::Domain { what: "E1 argument", value: z });
    }
    if z <= 1.0 {
        Ok(series(z) * z.exp())
    } else if z.is_infinite() {
        Ok(0.0)
    } else {
        continued_fraction(z)
    }
}

fn series(z: f64) -> f64 {
    // E1(z) = -γ - ln z - Σ_{k≥1} (-z)^k / (k k!)
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= -z / kf;
        let contrib = term / kf;
        sum += contrib;
        if contrib.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    -EULER_GAMMA - z.ln() - sum
}

// e^z E1(z) by the modified Lentz algorithm.
fn continued_fraction(z: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let mut b = z + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            return Ok(h);
        }
    }
    Err(Error::Convergence {
        routine: "E1 continued fraction",
        detail: format!("z = {z}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonpositive() {
        assert!(exp_integral_e1(0.0).is_err());
        assert!(exp_integral_e1(-1.0).is_err());
    }

    #[test]
    fn branches_agree_at_switch() {
        let below = series(1.0);
        let above = continued_fraction(1.0).unwrap() * (-1.0f64).exp();
        assert!((below - above).abs() < 1e-14);
    }
}
