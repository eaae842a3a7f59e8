//! Quadrature: adaptive Simpson for smooth integrands, tanh-sinh for
//! integrands with integrable end-point singularities, and a panelled
//! half-line rule whose truncation point comes from a caller-declared tail.

use std::f64::consts::FRAC_PI_2;

use crate::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-8;

const SIMPSON_MAX_EVALS: usize = 2_000_000;
const SIMPSON_MAX_DEPTH: u32 = 60;

/// ∫_lo^hi f by adaptive Simpson with Richardson correction.
pub fn quad_finite(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if lo == hi {
        return Ok(0.0);
    }
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::Domain { what: "finite quadrature bound", value: if lo.is_finite() { hi } else { lo } });
    }
    if hi < lo {
        return quad_finite(f, hi, lo, tol).map(|v| -v);
    }
    let evals = std::cell::Cell::new(0usize);
    let eval = |x: f64| -> Result<f64> {
        evals.set(evals.get() + 1);
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Quadrature { detail: format!("non-finite integrand {y} at x = {x}") })
        }
    };
    let mid = 0.5 * (lo + hi);
    let (fa, fm, fb) = (eval(lo)?, eval(mid)?, eval(hi)?);
    let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);

    struct Seg {
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    }
    let mut stack = vec![Seg { a: lo, b: hi, fa, fm, fb, whole, tol, depth: 0 }];
    let mut total = 0.0;
    while let Some(s) = stack.pop() {
        let m = 0.5 * (s.a + s.b);
        let lm = 0.5 * (s.a + m);
        let rm = 0.5 * (m + s.b);
        let flm = eval(lm)?;
        let frm = eval(rm)?;
        let left = (m - s.a) / 6.0 * (s.fa + 4.0 * flm + s.fm);
        let right = (s.b - m) / 6.0 * (s.fm + 4.0 * frm + s.fb);
        let diff = left + right - s.whole;
        if diff.abs() <= 15.0 * s.tol || s.depth >= SIMPSON_MAX_DEPTH || m == s.a || m == s.b {
            if s.depth >= SIMPSON_MAX_DEPTH && diff.abs() > 15.0 * s.tol {
                return Err(Error::Quadrature {
                    detail: format!("adaptive Simpson depth limit on [{}, {}]", s.a, s.b),
                });
            }
            total += left + right + diff / 15.0;
        } else {
            stack.push(Seg { a: s.a, b: m, fa: s.fa, fm: flm, fb: s.fm, whole: left, tol: 0.5 * s.tol, depth: s.depth + 1 });
            stack.push(Seg { a: m, b: s.b, fa: s.fm, fm: frm, fb: s.fb, whole: right, tol: 0.5 * s.tol, depth: s.depth + 1 });
        }
        if evals.get() > SIMPSON_MAX_EVALS {
            return Err(Error::Quadrature { detail: format!("adaptive Simpson budget exhausted on [{lo}, {hi}]") });
        }
    }
    Ok(total)
}

const TS_T_MAX: f64 = 4.5;
// Smallest end gap ≈ e^{−π sinh 5.3} ≈ 1e-137 of the half width: small enough
// for u^{−0.9}-type singularities, large enough that u^{−2} stays finite.
const TS_GAPS_T_MAX: f64 = 5.3;
const TS_MAX_LEVEL: u32 = 12;

/// ∫_lo^hi f by the tanh-sinh (double exponential) rule.
///
/// Abscissae cluster doubly exponentially at both ends, so integrable
/// power and log singularities there converge fast. Nodes that round onto
/// an end point are dropped.
pub fn tanh_sinh(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    tanh_sinh_core(&|x, _, _| f(x), lo, hi, tol, 0.0, TS_T_MAX)
}

/// As `tanh_sinh`, but `f(x, x − lo, hi − x)` also receives both end gaps,
/// computed without cancellation. Integrands with a singularity in
/// `hi − x` should be written in terms of the gap, which stays exact down
/// to ~1e-137 of the interval while `x` itself rounds onto `hi`.
pub fn tanh_sinh_gaps(f: impl Fn(f64, f64, f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    tanh_sinh_core(&f, lo, hi, tol, 0.0, TS_GAPS_T_MAX)
}

/// As `tanh_sinh_gaps`, stopping once the change between levels is below
/// `tol` or below `rtol` times the estimate.
pub fn tanh_sinh_gaps_rel(f: impl Fn(f64, f64, f64) -> f64, lo: f64, hi: f64, tol: f64, rtol: f64) -> Result<f64> {
    tanh_sinh_core(&f, lo, hi, tol, rtol, TS_GAPS_T_MAX)
}

fn tanh_sinh_core(
    f: &dyn Fn(f64, f64, f64) -> f64,
    lo: f64,
    hi: f64,
    tol: f64,
    rtol: f64,
    t_max: f64,
) -> Result<f64> {
    if lo == hi {
        return Ok(0.0);
    }
    if hi < lo {
        return tanh_sinh_core(&|x, a, b| f(x, b, a), hi, lo, tol, rtol, t_max).map(|v| -v);
    }
    let width = hi - lo;
    let half = 0.5 * width;
    let mid = lo + half;
    let check = |y: f64, x: f64| -> Result<f64> {
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Quadrature { detail: format!("non-finite integrand {y} at x = {x}") })
        }
    };
    // Contribution of the node pair at ±t.
    let pair = |t: f64| -> Result<f64> {
        let u = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u).exp();
        // distance from the nearer end, and the weight, without cancellation
        let gap = half * 2.0 * e / (1.0 + e);
        if gap == 0.0 {
            return Ok(0.0);
        }
        let w = half * FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
        let far = width - gap;
        let mut s = 0.0;
        let x = hi - gap;
        if t_max > TS_T_MAX || x < hi {
            s += w * check(f(x.max(lo), far, gap), x)?;
        }
        let x = lo + gap;
        if t_max > TS_T_MAX || x > lo {
            s += w * check(f(x.min(hi), gap, far), x)?;
        }
        Ok(s)
    };
    let mut sum = check(f(mid, half, half), mid)? * half * FRAC_PI_2;
    let mut k = 1;
    while (k as f64) <= t_max {
        sum += pair(k as f64)?;
        k += 1;
    }
    let mut step = 1.0;
    let mut estimate = sum * step;
    for level in 1..=TS_MAX_LEVEL {
        step *= 0.5;
        let mut t = step;
        while t <= t_max {
            sum += pair(t)?;
            t += 2.0 * step;
        }
        let next = sum * step;
        let change = (next - estimate).abs();
        estimate = next;
        if level >= 3 && change <= tol.max(rtol * estimate.abs()) {
            return Ok(estimate);
        }
    }
    Err(Error::Quadrature {
        detail: format!("tanh-sinh on [{lo}, {hi}] did not reach {tol:e}; estimate {estimate}"),
    })
}

/// Declared decay of an integrand on [lo, ∞).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tail {
    /// |f(x)| ≤ bound·e^{−rate (x − lo)}
    Exponential { rate: f64, bound: f64 },
    /// |f(x)| ≤ bound·(1 + x − lo)^{−exponent}, exponent > 1
    Power { exponent: f64, bound: f64 },
}

impl Tail {
    /// Offset T − lo beyond which the declared tail integrates to at most `eps`.
    pub fn truncation(&self, eps: f64) -> Result<f64> {
        match *self {
            Tail::Exponential { rate, bound } => {
                if !(rate > 0.0) {
                    return Err(Error::Domain { what: "exponential tail rate", value: rate });
                }
                let b = bound.abs().max(f64::MIN_POSITIVE);
                Ok(((b / (rate * eps)).ln() / rate).max(1.0 / rate))
            }
            Tail::Power { exponent, bound } => {
                if !(exponent > 1.0) {
                    return Err(Error::Domain { what: "power tail exponent", value: exponent });
                }
                let b = bound.abs().max(f64::MIN_POSITIVE);
                let p = exponent - 1.0;
                Ok(((b / (p * eps)).powf(1.0 / p) - 1.0).max(1.0))
            }
        }
    }

    fn panel_width(&self) -> f64 {
        match *self {
            Tail::Exponential { rate, .. } => 1.0 / rate,
            Tail::Power { .. } => 1.0,
        }
    }
}

/// ∫_lo^∞ f.
///
/// Exponential tails: truncated where the declared tail leaves less than
/// tol/10, on geometrically growing panels. Power tails: [lo, lo+1] directly
/// and the rest through x = lo + s^{−1/p}, p = exponent − 1, which turns
/// the declared decay into a bounded integrand on s ∈ (0, 1]. Panels are
/// integrated with `tanh_sinh_gaps`, so an integrable singularity at `lo` is
/// tolerated.
pub fn quad_semi_infinite(f: impl Fn(f64) -> f64, lo: f64, tail: Tail, tol: f64) -> Result<f64> {
    match tail {
        Tail::Exponential { .. } => {
            let span = tail.truncation(0.1 * tol)?;
            let mut edges = vec![lo];
            let mut w = tail.panel_width().min(span);
            let mut pos = 0.0;
            while pos < span {
                pos = (pos + w).min(span);
                edges.push(lo + pos);
                w *= 2.0;
            }
            let panel_tol = 0.9 * tol / (edges.len() - 1) as f64;
            let mut total = 0.0;
            for e in edges.windows(2) {
                let a = e[0];
                total += tanh_sinh_gaps(|_, d, _| f(a + d), e[0], e[1], panel_tol)?;
            }
            Ok(total)
        }
        Tail::Power { exponent, .. } => {
            if !(exponent > 1.0) {
                return Err(Error::Domain { what: "power tail exponent", value: exponent });
            }
            let p = exponent - 1.0;
            let head = tanh_sinh_gaps(|_, d, _| f(lo + d), lo, lo + 1.0, 0.5 * tol)?;
            let far = tanh_sinh_gaps(
                |_, s, _| {
                    let x = s.powf(-1.0 / p);
                    let jac = x / (p * s);
                    if !x.is_finite() || !jac.is_finite() {
                        return 0.0;
                    }
                    let v = f(lo + x);
                    if v == 0.0 {
                        0.0
                    } else {
                        v * jac
                    }
                },
                0.0,
                1.0,
                0.5 * tol,
            )?;
            Ok(head + far)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_polynomial() {
        let v = quad_finite(|x| x * x, 0.0, 3.0, 1e-12).unwrap();
        assert!((v - 9.0).abs() < 1e-12);
        let r = quad_finite(|x| x, 1.0, 0.0, 1e-12).unwrap();
        assert!((r + 0.5).abs() < 1e-14);
    }

    #[test]
    fn tanh_sinh_endpoint_singularities() {
        // ∫₀¹ x^{-1/2} = 2, ∫₀¹ ln x = -1
        let v = tanh_sinh(|x| x.powf(-0.5), 0.0, 1.0, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-9, "{v}");
        let l = tanh_sinh(|x| x.ln(), 0.0, 1.0, 1e-12).unwrap();
        assert!((l + 1.0).abs() < 1e-11, "{l}");
    }

    #[test]
    fn gap_rule_resolves_strong_end_singularities() {
        // ∫₀¹ (1−x)^{-0.9} = 10 and ∫₀¹ x^{-0.9} = 10
        let v = tanh_sinh_gaps(|_, _, g| g.powf(-0.9), 0.0, 1.0, 1e-12).unwrap();
        assert!((v - 10.0).abs() < 1e-9, "{v}");
        let v = tanh_sinh_gaps(|_, g, _| g.powf(-0.9), 0.0, 1.0, 1e-12).unwrap();
        assert!((v - 10.0).abs() < 1e-9, "{v}");
    }

    #[test]
    fn power_tail_mapped_to_finite_range() {
        // ∫₀^∞ (1+x)^{-1.3} = 1/0.3, ∫₀^∞ x^{-0.5}(1+x)^{-1} = π
        let v = quad_semi_infinite(|x| (1.0 + x).powf(-1.3), 0.0, Tail::Power { exponent: 1.3, bound: 1.0 }, 1e-11).unwrap();
        assert!((v - 1.0 / 0.3).abs() < 1e-8, "{v}");
        let v = quad_semi_infinite(|x| x.powf(-0.5) / (1.0 + x), 0.0, Tail::Power { exponent: 1.5, bound: 1.0 }, 1e-11).unwrap();
        assert!((v - std::f64::consts::PI).abs() < 1e-8, "{v}");
    }

    #[test]
    fn nonfinite_integrand_is_an_error() {
        assert!(quad_finite(|_| f64::NAN, 0.0, 1.0, 1e-8).is_err());
    }

    #[test]
    fn truncation_bounds_tail() {
        let t = Tail::Exponential { rate: 2.0, bound: 1.0 }.truncation(1e-9).unwrap();
        assert!((-2.0 * t).exp() / 2.0 <= 1.0001e-9);
        assert!(Tail::Power { exponent: 1.0, bound: 1.0 }.truncation(1e-9).is_err());
    }
}
