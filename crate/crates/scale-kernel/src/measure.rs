//! Measures made of point masses plus a density on an interval.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use special_functions::{quad_semi_infinite, tanh_sinh_gaps, tanh_sinh_gaps_rel, GridFunction, Tail};

use crate::{Error, Result};

/// Density as a function of (y, upper − y). The second argument is exact
/// near `upper` (infinite for unbounded supports), so densities that vanish
/// or blow up there can be written without cancellation.
pub type DensityFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub location: f64,
    pub weight: f64,
}

/// Atoms plus a density on [lower, upper]; `upper` may be infinite, in
/// which case `tail` bounds the density for truncation.
#[derive(Clone)]
pub struct MixedMeasure {
    atoms: Vec<Atom>,
    density: DensityFn,
    lower: f64,
    upper: f64,
    tail: Option<Tail>,
    tol: f64,
    rtol: f64,
    breaks: Vec<f64>,
}

impl fmt::Debug for MixedMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MixedMeasure")
            .field("atoms", &self.atoms)
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .field("tail", &self.tail)
            .field("breaks", &self.breaks)
            .finish()
    }
}

impl MixedMeasure {
    pub fn finite(atoms: Vec<Atom>, density: DensityFn, lower: f64, upper: f64) -> Self {
        Self { atoms, density, lower, upper, tail: None, tol: 1e-10, rtol: 0.0, breaks: vec![] }
    }

    pub fn semi_infinite(atoms: Vec<Atom>, density: DensityFn, lower: f64, tail: Tail) -> Self {
        Self { atoms, density, lower, upper: f64::INFINITY, tail: Some(tail), tol: 1e-10, rtol: 0.0, breaks: vec![] }
    }

    /// Absolute tolerance used by `integrate`.
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// Relative tolerance accepted by `integrate_from_upper` in addition to
    /// the absolute one.
    pub fn with_relative_tolerance(mut self, rtol: f64) -> Self {
        self.rtol = rtol;
        self
    }

    /// Points where the density has a kink or jump; quadratures split there.
    pub fn with_breaks(mut self, breaks: &[f64]) -> Self {
        let mut b: Vec<f64> = breaks.iter().copied().filter(|&x| x > self.lower && x < self.upper).collect();
        b.sort_by(f64::total_cmp);
        b.dedup();
        self.breaks = b;
        self
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    // [lower, hi] cut at the interior breaks.
    fn pieces(&self, hi: f64) -> Vec<(f64, f64)> {
        let mut edges = vec![self.lower];
        edges.extend(self.breaks.iter().copied().filter(|&b| b < hi));
        edges.push(hi);
        edges.windows(2).map(|w| (w[0], w[1])).collect()
    }

    // ∫ density·f over [lower, hi] (hi finite), f taking (y, upper − y).
    fn integrate_pieces(&self, f: &dyn Fn(f64, f64) -> f64, hi: f64) -> Result<f64> {
        let upper = self.upper;
        let mut total = 0.0;
        for (lo, b) in self.pieces(hi) {
            total += tanh_sinh_gaps(
                |y, _, g| {
                    let u = if b == upper { g } else { upper - y };
                    let d = (self.density)(y, u);
                    if d == 0.0 {
                        0.0
                    } else {
                        d * f(y, u)
                    }
                },
                lo,
                b,
                self.tol,
            )?;
        }
        Ok(total)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn tail(&self) -> Option<Tail> {
        self.tail
    }

    pub fn density_fn(&self) -> DensityFn {
        self.density.clone()
    }

    /// Density at y, zero outside the support.
    pub fn density(&self, y: f64) -> f64 {
        if y < self.lower || y > self.upper {
            0.0
        } else {
            (self.density)(y, self.upper - y)
        }
    }

    pub fn atom_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// ∫ f dμ: atoms exactly, density part by quadrature. For an infinite
    /// support `f` must be bounded by 1 in absolute value.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> Result<f64> {
        self.integrate_with_tail(f, self.tail)
    }

    /// ∫ f dμ with f given as a function of (y, upper − y), for integrands
    /// singular at `upper`. Finite supports only.
    pub fn integrate_gaps(&self, f: impl Fn(f64, f64) -> f64) -> Result<f64> {
        if !self.upper.is_finite() {
            return Err(Error::Domain { what: "gap integration needs a finite support", value: self.upper });
        }
        let atoms: f64 = self.atoms.iter().map(|a| a.weight * f(a.location, self.upper - a.location)).sum();
        Ok(atoms + self.integrate_pieces(&f, self.upper)?)
    }

    /// ∫ f dμ over a finite support, integrating in u = upper − y with the
    /// u-range split at `u_breaks`. For integrands with features at a tiny
    /// distance from `upper`, which a split in y cannot place exactly.
    pub fn integrate_from_upper(&self, f: impl Fn(f64, f64) -> f64, u_breaks: &[f64]) -> Result<f64> {
        if !self.upper.is_finite() {
            return Err(Error::Domain { what: "gap integration needs a finite support", value: self.upper });
        }
        let width = self.upper - self.lower;
        let mut edges = vec![0.0];
        let mut inner: Vec<f64> = u_breaks.iter().copied().filter(|&b| b > 0.0 && b < width).collect();
        inner.sort_by(f64::total_cmp);
        edges.extend(inner);
        edges.push(width);
        let atoms: f64 = self.atoms.iter().map(|a| a.weight * f(a.location, self.upper - a.location)).sum();
        let mut total = atoms;
        for w in edges.windows(2) {
            let (u0, u1) = (w[0], w[1]);
            total += tanh_sinh_gaps_rel(
                |u, g0, g1| {
                    let u = if u0 == 0.0 { g0 } else { u };
                    let y = if u1 == width { self.lower + g1 } else { self.upper - u };
                    let d = (self.density)(y, u);
                    if d == 0.0 {
                        0.0
                    } else {
                        d * f(y, u)
                    }
                },
                u0,
                u1,
                self.tol,
                self.rtol,
            )?;
        }
        Ok(total)
    }

    /// As `integrate`, with an explicit tail bound for f·density.
    pub fn integrate_with_tail(&self, f: impl Fn(f64) -> f64, tail: Option<Tail>) -> Result<f64> {
        if self.upper.is_finite() {
            return self.integrate_gaps(|y, _| f(y));
        }
        let atoms: f64 = self.atoms.iter().map(|a| a.weight * f(a.location)).sum();
        let g = |y: f64| {
            let d = (self.density)(y, f64::INFINITY);
            if d == 0.0 {
                0.0
            } else {
                d * f(y)
            }
        };
        let tail = tail.ok_or(Error::Domain { what: "semi-infinite measure without tail", value: self.lower })?;
        // the declared tail, anchored at lower, also bounds f beyond the last break
        let start = self.breaks.last().copied().unwrap_or(self.lower);
        let head = if start > self.lower { self.integrate_pieces(&|y, _| f(y), start)? } else { 0.0 };
        Ok(atoms + head + quad_semi_infinite(g, start, tail, self.tol)?)
    }

    pub fn total_mass(&self) -> Result<f64> {
        self.integrate(|_| 1.0)
    }

    /// ∫ y dμ.
    pub fn mean(&self) -> Result<f64> {
        let tail = self.tail.map(|t| shifted_moment_tail(t, self.lower));
        self.integrate_with_tail(|y| y, tail)
    }

    /// μ([lower, y]).
    pub fn cdf(&self, y: f64) -> Result<f64> {
        let atoms: f64 = self.atoms.iter().filter(|a| a.location <= y).map(|a| a.weight).sum();
        if y <= self.lower {
            return Ok(atoms);
        }
        Ok(atoms + self.integrate_pieces(&|_, _| 1.0, y.min(self.upper))?)
    }

    /// Same measure multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        let d = self.density.clone();
        let tail = self.tail.map(|t| match t {
            Tail::Exponential { rate, bound } => Tail::Exponential { rate, bound: bound * c.abs() },
            Tail::Power { exponent, bound } => Tail::Power { exponent, bound: bound * c.abs() },
        });
        Self {
            atoms: self.atoms.iter().map(|a| Atom { location: a.location, weight: a.weight * c }).collect(),
            density: Arc::new(move |y, u| c * d(y, u)),
            lower: self.lower,
            upper: self.upper,
            tail,
            tol: self.tol,
            rtol: self.rtol,
            breaks: self.breaks.clone(),
        }
    }

    /// Density on `points`+1 equally spaced nodes of [lower, hi].
    pub fn sample_density(&self, hi: f64, points: usize) -> special_functions::Result<GridFunction> {
        let h = (hi - self.lower) / points as f64;
        let xs: Vec<f64> = (0..=points).map(|i| self.lower + i as f64 * h).collect();
        let ys: Vec<f64> = xs.par_iter().map(|&x| self.density(x)).collect();
        GridFunction::new(xs, ys)
    }
}

// Tail bound for y·f(y) given one for f, with y = lower + z.
fn shifted_moment_tail(t: Tail, lower: f64) -> Tail {
    let scale = lower.abs() + 1.0;
    match t {
        Tail::Exponential { rate, bound } => {
            // (1+z)e^{−rz} ≤ C e^{−rz/2}
            let c = if rate >= 2.0 { 1.0 } else { 2.0 / rate * (0.5 * rate - 1.0).exp() };
            Tail::Exponential { rate: 0.5 * rate, bound: bound * scale * c }
        }
        Tail::Power { exponent, bound } => Tail::Power { exponent: exponent - 1.0, bound: bound * scale },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_law_moments() {
        let m = MixedMeasure::semi_infinite(
            vec![],
            Arc::new(|y: f64, _| 2.0 * (-2.0 * y).exp()),
            0.0,
            Tail::Exponential { rate: 2.0, bound: 2.0 },
        );
        assert!((m.total_mass().unwrap() - 1.0).abs() < 1e-9);
        assert!((m.mean().unwrap() - 0.5).abs() < 1e-9);
        assert!((m.cdf(1.0).unwrap() - (1.0 - (-2.0f64).exp())).abs() < 1e-10);
    }

    #[test]
    fn atoms_enter_integrals_exactly() {
        let m = MixedMeasure::finite(vec![Atom { location: 0.0, weight: 0.25 }], Arc::new(|_, _| 0.75), 0.0, 1.0);
        assert!((m.total_mass().unwrap() - 1.0).abs() < 1e-12);
        assert!((m.integrate(|y| y).unwrap() - 0.375).abs() < 1e-12);
        assert!((m.scaled(2.0).total_mass().unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(m.density(1.5), 0.0);
    }

    #[test]
    fn upper_splits_resolve_narrow_peaks() {
        // ∫₀¹ h(u+h)^{−2} du = 1 − h/(1+h), peak of width h at u = 0
        let m = MixedMeasure::finite(vec![], Arc::new(|_, _| 1.0), 0.0, 1.0).with_tolerance(1e-12);
        let h = 1e-30;
        let v = m.integrate_from_upper(|_, u| h / ((u + h) * (u + h)), &[h, 30.0 * h]).unwrap();
        assert!((v - (1.0 - h / (1.0 + h))).abs() < 1e-10, "{v}");
    }

    #[test]
    fn breaks_resolve_kinks() {
        // density e^{−(y−1)⁺}/2 on [0, ∞)
        let d: DensityFn = Arc::new(|y: f64, _| 0.5 * (-(y - 1.0).max(0.0)).exp());
        let m = MixedMeasure::semi_infinite(vec![], d, 0.0, Tail::Exponential { rate: 1.0, bound: 1.0 })
            .with_tolerance(1e-12)
            .with_breaks(&[1.0]);
        assert!((m.total_mass().unwrap() - 1.0).abs() < 1e-11);
        assert!((m.cdf(2.0).unwrap() - (1.0 - 0.5 * (-1.0f64).exp())).abs() < 1e-11);
    }
}
