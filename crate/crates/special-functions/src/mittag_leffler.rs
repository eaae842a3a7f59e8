//! Mittag-Leffler function E_{α,1}(z) = Σ z^k / Γ(1+αk) and its derivatives.
//!
//! Terms are formed in log space so large |z| does not overflow the powers
//! before the gamma function catches up.

use num_complex::Complex64;
use statrs::function::gamma::{gamma, ln_gamma};

use crate::{Error, Result};

const REL_TOL: f64 = 1e-16;
const MAX_TERMS: usize = 10_000;

fn check_args(alpha: f64) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain { what: "Mittag-Leffler alpha", value: alpha });
    }
    Ok(())
}

// ln of k!/(k-m)! / Γ(1+αk), the coefficient of z^{k-m} in the m-th derivative.
fn ln_coefficient(alpha: f64, k: usize, order: usize) -> f64 {
    let falling: f64 = ((k - order + 1)..=k).map(|j| (j as f64).ln()).sum();
    falling - ln_gamma(1.0 + alpha * k as f64)
}

// Same coefficient evaluated directly while Γ is representable.
fn coefficient(alpha: f64, k: usize, order: usize) -> Option<f64> {
    let arg = 1.0 + alpha * k as f64;
    if arg > 170.0 {
        return None;
    }
    let falling: f64 = ((k - order + 1)..=k).map(|j| j as f64).product();
    let g = if arg.fract() == 0.0 {
        (2..arg as usize).map(|j| j as f64).product()
    } else {
        gamma(arg)
    };
    Some(falling / g)
}

fn term_real(alpha: f64, k: usize, order: usize, z: f64) -> f64 {
    let power = (k - order) as i32;
    if let Some(c) = coefficient(alpha, k, order) {
        let t = c * z.powi(power);
        if t.is_finite() && t != 0.0 {
            return t;
        }
    }
    let mag = (ln_coefficient(alpha, k, order) + power as f64 * z.abs().ln()).exp();
    if z < 0.0 && power % 2 == 1 {
        -mag
    } else {
        mag
    }
}

fn term_complex(alpha: f64, k: usize, order: usize, z: Complex64) -> Complex64 {
    let power = (k - order) as i32;
    if let Some(c) = coefficient(alpha, k, order) {
        let t = z.powi(power) * c;
        if t.re.is_finite() && t.im.is_finite() && t.norm() > 0.0 {
            return t;
        }
    }
    (z.ln() * power as f64 + ln_coefficient(alpha, k, order)).exp()
}

/// `order`-th derivative of E_{α,1} at real z.
pub fn mittag_leffler(alpha: f64, z: f64, order: usize) -> Result<f64> {
    check_args(alpha)?;
    if z.is_nan() {
        return Err(Error::Domain { what: "Mittag-Leffler argument", value: z });
    }
    let first = term_real(alpha, order, order, 1.0);
    if z == 0.0 {
        return Ok(first);
    }
    let mut sum = first;
    let mut prev = first;
    for k in (order + 1)..(order + MAX_TERMS) {
        let term = term_real(alpha, k, order, z);
        let mag = term.abs();
        if !mag.is_finite() {
            return Err(Error::Convergence {
                routine: "Mittag-Leffler series",
                detail: format!("term overflow at z = {z}"),
            });
        }
        sum += term;
        if mag <= prev && mag < REL_TOL * sum.abs() {
            return Ok(sum);
        }
        prev = mag;
    }
    Err(Error::Convergence {
        routine: "Mittag-Leffler series",
        detail: format!("{MAX_TERMS} terms at z = {z}"),
    })
}

/// Complex-argument version, used on Talbot contours.
pub fn mittag_leffler_complex(alpha: f64, z: Complex64, order: usize) -> Result<Complex64> {
    mittag_leffler_complex_bounded(alpha, z, order).map(|(v, _)| v)
}

/// As `mittag_leffler_complex`, also returning the largest term magnitude
/// of the series. Rounding error of the sum is a small multiple of
/// ε times that magnitude, which far exceeds |E| where the series cancels.
pub fn mittag_leffler_complex_bounded(alpha: f64, z: Complex64, order: usize) -> Result<(Complex64, f64)> {
    check_args(alpha)?;
    let first = Complex64::new(term_real(alpha, order, order, 1.0), 0.0);
    if z == Complex64::new(0.0, 0.0) {
        return Ok((first, first.norm()));
    }
    let mut sum = first;
    let mut prev = first.norm();
    let mut largest = prev;
    for k in (order + 1)..(order + MAX_TERMS) {
        let term = term_complex(alpha, k, order, z);
        let mag = term.norm();
        if !mag.is_finite() {
            return Err(Error::Convergence {
                routine: "Mittag-Leffler series",
                detail: format!("term overflow at z = {z}"),
            });
        }
        sum += term;
        largest = largest.max(mag);
        if mag <= prev && mag < REL_TOL * sum.norm().max(f64::MIN_POSITIVE) {
            return Ok((sum, largest));
        }
        prev = mag;
    }
    Err(Error::Convergence {
        routine: "Mittag-Leffler series",
        detail: format!("{MAX_TERMS} terms at z = {z}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_argument_is_leading_coefficient() {
        assert_eq!(mittag_leffler(1.5, 0.0, 0).unwrap(), 1.0);
        // order 2 at α=1: 2!/Γ(3) = 1
        assert!((mittag_leffler(1.0, 0.0, 2).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn complex_matches_real_on_axis() {
        for &z in &[-3.0, -0.5, 0.7, 4.0] {
            for order in 0..3 {
                let r = mittag_leffler(1.5, z, order).unwrap();
                let c = mittag_leffler_complex(1.5, Complex64::new(z, 0.0), order).unwrap();
                assert!((r - c.re).abs() < 1e-13 * r.abs().max(1.0));
                assert!(c.im.abs() < 1e-13);
            }
        }
    }
}
