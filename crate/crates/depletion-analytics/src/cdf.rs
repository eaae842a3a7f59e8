//! Distribution functions of τ_a and of the speed τ_a − Ḡ by Talbot
//! inversion of their transforms, continued to complex arguments.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use levy_core::LevyModel;
use special_functions::{
    invert_laplace_bounded, invert_laplace_nodes, mittag_leffler_complex_bounded, GridFunction, TALBOT_NODES,
};

use crate::analytics::Depletion;
use crate::{Error, Result};

/// Node counts tried for the stable model.
const STABLE_NODES: [usize; 8] = [32, 28, 24, 20, 16, 12, 10, 8];
/// Largest accepted error estimate of a stable CDF value.
const STABLE_CDF_TOL: f64 = 1e-4;
/// Rounding error of a series sum per unit of its largest term.
const SERIES_EPS: f64 = 8.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CdfKind {
    Tau,
    Speed,
}

#[derive(Debug, Clone)]
pub struct CdfCurve {
    pub kind: CdfKind,
    /// CDF values on the requested times.
    pub grid: GridFunction,
    /// Mass at t = 0.
    pub atom: f64,
    /// Times below this could not be resolved and were set to 0.
    pub unresolved_below: Option<f64>,
}

/// CDF of a law on [0, ∞) from its Laplace transform, on `times` (t ≥ 0),
/// using the standard node count. `atom` is the mass at 0.
pub fn cdf_from_transform<F>(transform: F, atom: f64, times: &[f64]) -> Result<GridFunction>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let point = |t: f64| {
        let g = |s: Complex64| match transform(s) {
            Ok(v) => Ok((v - atom) / s),
            Err(e) => Err(transform_error(s, e)),
        };
        Ok(Some(atom + invert_laplace_nodes(g, t, 0.0, TALBOT_NODES)?))
    };
    let (grid, _) = tabulate(point, atom, times)?;
    Ok(grid)
}

fn transform_error(s: Complex64, e: Error) -> special_functions::Error {
    special_functions::Error::Transform { re: s.re, im: s.im, detail: e.to_string() }
}

// Evaluates `point(t)` (None where unresolved) on the times, then clamps to
// [0, 1] and takes the running max.
fn tabulate<P>(point: P, atom: f64, times: &[f64]) -> Result<(GridFunction, Option<f64>)>
where
    P: Fn(f64) -> Result<Option<f64>> + Sync,
{
    for w in times.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::Domain { what: "CDF times must increase", value: w[1] });
        }
    }
    if let Some(&t) = times.first() {
        if !(t >= 0.0) {
            return Err(Error::Domain { what: "CDF time", value: t });
        }
    }
    let raw: Vec<Option<f64>> =
        times.par_iter().map(|&t| if t == 0.0 { Ok(Some(atom)) } else { point(t) }).collect::<Result<_>>()?;
    let unresolved = raw.iter().zip(times).rev().find(|(v, _)| v.is_none()).map(|(_, &t)| t);
    let mut running = 0.0f64;
    let values: Vec<f64> = raw
        .iter()
        .map(|v| {
            running = running.max(v.unwrap_or(0.0).clamp(0.0, 1.0));
            running
        })
        .collect();
    let grid = GridFunction::new(times.to_vec(), values)?;
    Ok((grid, unresolved.map(|t| next_after(times, t))))
}

fn next_after(times: &[f64], t: f64) -> f64 {
    times.iter().copied().find(|&s| s > t).unwrap_or(t)
}

// Roots of c z² + (cμ − λ − s)z − sμ = 0, the CL equation ψ(z) = s.
// Returns (Φ(s), κ(s)) with Φ the root of larger real part, −κ the other.
fn cl_roots(c: f64, lambda: f64, mu: f64, s: Complex64) -> (Complex64, Complex64) {
    let b = -s + (c * mu - lambda);
    let disc = (b * b + s * (4.0 * c * mu)).sqrt();
    let r1 = if (-b + disc).norm() >= (-b - disc).norm() { (-b + disc) / (2.0 * c) } else { (-b - disc) / (2.0 * c) };
    // product of roots is −sμ/c; avoids cancellation in the small root
    let r2 = if r1.norm() > 0.0 { -s * mu / (c * r1) } else { Complex64::new(0.0, 0.0) };
    if r1.re >= r2.re {
        (r1, -r2)
    } else {
        (r2, -r1)
    }
}

// Transform value with an absolute error bound.
#[derive(Debug, Clone, Copy)]
struct Bounded {
    value: Complex64,
    err: f64,
}

impl Depletion {
    // E[e^{−sτa}] and the ratio λ(a,s)/λ(a,0), continued to complex s, with
    // rounding error bounds.
    fn complex_pieces(&self, s: Complex64) -> Result<(Bounded, Bounded)> {
        let a = self.level();
        match *self.model() {
            LevyModel::CramerLundbergExp { poisson_intensity: lp, claim_rate: mu, .. } => {
                let c = self.model().premium_rate();
                let (phi, k2) = cl_roots(c, lp, mu, s);
                let dpsi = |z: Complex64| -(lp * mu) / ((z + mu) * (z + mu)) + c;
                let up = dpsi(phi).inv();
                let down = -dpsi(-k2).inv();
                let e = (-(phi + k2) * a).exp();
                let den = up * phi + down * k2 * e;
                let t = (phi + mu) / mu * down * (k2 + phi) * (-k2 * a).exp() / den;
                let ratio = den / (up - down * e) / self.log_derivative();
                let b = |v: Complex64| Bounded { value: v, err: SERIES_EPS * v.norm() };
                Ok((b(t), b(ratio)))
            }
            LevyModel::StableRisk { stability: al, .. } => {
                let kappa = self.model().stable_exponent_scale();
                let z = s * (a.powf(al) / kappa);
                let (e0, m0) = mittag_leffler_complex_bounded(al, z, 0)?;
                let (e1, m1) = mittag_leffler_complex_bounded(al, z, 1)?;
                let (e2, m2) = mittag_leffler_complex_bounded(al, z, 2)?;
                let (d0, d1, d2) = (SERIES_EPS * m0, SERIES_EPS * m1, SERIES_EPS * m2);
                // W = c1·E′, W′ = c2·E′ + c3·s·E″
                let c1 = al / kappa * a.powf(al - 1.0);
                let c2 = al / kappa * (al - 1.0) * a.powf(al - 2.0);
                let c3 = (al / kappa).powi(2) * a.powf(2.0 * al - 2.0);
                let w = e1 * c1;
                let wp = e1 * c2 + e2 * s * c3;
                let dw = c1 * d1;
                let dwp = c2 * d1 + c3 * s.norm() * d2;
                let t = e0 - s * w * w / wp;
                let (nw, nwp) = (w.norm(), wp.norm());
                let dt = d0 + s.norm() * (2.0 * nw * dw / nwp + nw * nw * dwp / (nwp * nwp));
                let ratio = wp / w / self.log_derivative();
                let dratio = ratio.norm() * (dwp / nwp + dw / nw);
                Ok((Bounded { value: t, err: dt }, Bounded { value: ratio, err: dratio }))
            }
            _ => Err(Error::Unsupported(format!(
                "distribution functions of τ_a are available for the Cramér–Lundberg and stable models, not {}",
                self.model().variant_name()
            ))),
        }
    }

    fn tau_bounded(&self, s: Complex64) -> Result<Bounded> {
        Ok(self.complex_pieces(s)?.0)
    }

    fn speed_bounded(&self, s: Complex64) -> Result<Bounded> {
        let (t, r) = self.complex_pieces(s)?;
        Ok(Bounded { value: t.value * r.value, err: r.value.norm() * t.err + t.value.norm() * r.err })
    }

    /// E[e^{−sτa}] at complex s.
    pub fn tau_transform_complex(&self, s: Complex64) -> Result<Complex64> {
        Ok(self.tau_bounded(s)?.value)
    }

    /// E[e^{−s(τa − Ḡ)}] at complex s.
    pub fn speed_transform_complex(&self, s: Complex64) -> Result<Complex64> {
        Ok(self.speed_bounded(s)?.value)
    }

    // CDF value at t > 0 from a bounded transform. The stable model picks
    // the node count with the smallest rounding plus discretization error
    // and gives up (None) when even that exceeds STABLE_CDF_TOL.
    fn cdf_point<F>(&self, transform: &F, atom: f64, t: f64) -> Result<Option<f64>>
    where
        F: Fn(Complex64) -> Result<Bounded>,
    {
        let g = |s: Complex64| match transform(s) {
            Ok(b) => Ok(((b.value - atom) / s, b.err / s.norm())),
            Err(e) => Err(transform_error(s, e)),
        };
        if !matches!(self.model(), LevyModel::StableRisk { .. }) {
            return Ok(Some(atom + invert_laplace_bounded(g, t, 0.0, TALBOT_NODES)?.0));
        }
        let mut best: Option<(f64, f64)> = None;
        for m in STABLE_NODES {
            // series overflow far out on the contour rules this count out
            let Ok((v, err)) = invert_laplace_bounded(g, t, 0.0, m) else { continue };
            let score = err + 10f64.powf(-0.6 * m as f64);
            if score.is_finite() && best.is_none_or(|(_, b)| score < b) {
                best = Some((v, score));
            }
        }
        Ok(best.filter(|&(_, score)| score <= STABLE_CDF_TOL).map(|(v, _)| atom + v))
    }

    fn check_cdf_support(&self) -> Result<()> {
        self.complex_pieces(Complex64::new(1.0, 0.0)).map(|_| ())
    }

    /// P(τ_a ≤ t) on `times`.
    pub fn tau_cdf(&self, times: &[f64]) -> Result<CdfCurve> {
        self.check_cdf_support()?;
        let f = |s| self.tau_bounded(s);
        let (grid, unresolved_below) = tabulate(|t| self.cdf_point(&f, 0.0, t), 0.0, times)?;
        Ok(CdfCurve { kind: CdfKind::Tau, grid, atom: 0.0, unresolved_below })
    }

    /// P(τ_a − Ḡ ≤ t) on `times`. For the Cramér–Lundberg model the speed
    /// is 0 when the fatal claim arrives at a running maximum.
    pub fn speed_cdf(&self, times: &[f64]) -> Result<CdfCurve> {
        self.check_cdf_support()?;
        let atom = if self.model().bounded_variation() {
            self.model().levy_tail(self.level())? * self.resolvent().atom_mass()
        } else {
            0.0
        };
        let f = |s| self.speed_bounded(s);
        let (grid, unresolved_below) = tabulate(|t| self.cdf_point(&f, atom, t), atom, times)?;
        Ok(CdfCurve { kind: CdfKind::Speed, grid, atom, unresolved_below })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cl_roots_solve_the_quadratic() {
        let (c, l, mu) = (1.5, 1.0, 1.0);
        let s = Complex64::new(0.3, 2.0);
        let (phi, k) = cl_roots(c, l, mu, s);
        for z in [phi, -k] {
            let psi = z * c - z * l / (z + mu);
            assert!((psi - s).norm() < 1e-12);
        }
        assert!(phi.re > -k.re);
    }

    #[test]
    fn exponential_law_inverts() {
        let f = |s: Complex64| Ok(Complex64::new(2.0, 0.0) / (s + 2.0));
        let g = cdf_from_transform(f, 0.0, &[0.0, 0.5, 1.0, 3.0]).unwrap();
        for (t, v) in g.iter() {
            assert!((v - (1.0 - (-2.0 * t).exp())).abs() < 1e-9, "{t} {v}");
        }
    }
}
