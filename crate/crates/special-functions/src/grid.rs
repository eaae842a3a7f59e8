//! Functions sampled on an ascending grid, and trapezoid convolution on a
//! shared uniform grid.

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    abscissae: Vec<f64>,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(abscissae: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if abscissae.len() != values.len() {
            return Err(Error::GridMismatch(format!(
                "{} abscissae but {} values",
                abscissae.len(),
                values.len()
            )));
        }
        if abscissae.is_empty() {
            return Err(Error::GridMismatch("empty grid".into()));
        }
        if abscissae.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::GridMismatch("abscissae not strictly increasing".into()));
        }
        Ok(Self { abscissae, values })
    }

    /// Samples `f` at lo, lo+h, ..., lo+n·h.
    pub fn sample(lo: f64, h: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::Domain { what: "grid spacing", value: h });
        }
        let xs: Vec<f64> = (0..=n).map(|i| lo + i as f64 * h).collect();
        let ys = xs.iter().map(|&x| f(x)).collect();
        Self::new(xs, ys)
    }

    pub fn abscissae(&self) -> &[f64] {
        &self.abscissae
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.abscissae.iter().copied().zip(self.values.iter().copied())
    }

    /// Piecewise-linear interpolation, constant beyond the end points.
    pub fn interpolate(&self, x: f64) -> f64 {
        let xs = &self.abscissae;
        let n = xs.len();
        if n == 1 || x <= xs[0] {
            return self.values[0];
        }
        if x >= xs[n - 1] {
            return self.values[n - 1];
        }
        let i = xs.partition_point(|&v| v <= x) - 1;
        let t = (x - xs[i]) / (xs[i + 1] - xs[i]);
        self.values[i] + t * (self.values[i + 1] - self.values[i])
    }

    /// Spacing if the grid is uniform to relative 1e-9.
    pub fn uniform_spacing(&self) -> Option<f64> {
        let xs = &self.abscissae;
        if xs.len() < 2 {
            return None;
        }
        let h = (xs[xs.len() - 1] - xs[0]) / (xs.len() - 1) as f64;
        xs.windows(2)
            .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h)
            .then_some(h)
    }

    pub fn map(&self, f: impl Fn(f64, f64) -> f64) -> Self {
        let values = self.iter().map(|(x, y)| f(x, y)).collect();
        Self { abscissae: self.abscissae.clone(), values }
    }
}

/// (f∗g)(x_i) = ∫₀^{x_i} f(x_i − y) g(y) dy by the trapezoid rule.
///
/// Both inputs must share the same uniform grid starting at 0.
pub fn convolve(f: &GridFunction, g_density: &GridFunction) -> Result<GridFunction> {
    if f.abscissae.len() != g_density.abscissae.len()
        || f.abscissae
            .iter()
            .zip(&g_density.abscissae)
            .any(|(a, b)| (a - b).abs() > 1e-12 * a.abs().max(1.0))
    {
        return Err(Error::GridMismatch("convolution operands on different grids".into()));
    }
    if f.abscissae[0].abs() > 0.0 {
        return Err(Error::GridMismatch("convolution grid must start at 0".into()));
    }
    let h = f
        .uniform_spacing()
        .ok_or_else(|| Error::GridMismatch("convolution grid not uniform".into()))?;
    let fv = &f.values;
    let gv = &g_density.values;
    let out = (0..fv.len())
        .map(|i| {
            if i == 0 {
                return 0.0;
            }
            let mut s = 0.5 * (fv[i] * gv[0] + fv[0] * gv[i]);
            for j in 1..i {
                s += fv[i - j] * gv[j];
            }
            s * h
        })
        .collect();
    Ok(GridFunction { abscissae: f.abscissae.clone(), values: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_grids() {
        assert!(GridFunction::new(vec![0.0, 1.0], vec![1.0]).is_err());
        assert!(GridFunction::new(vec![0.0, 0.0], vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn interpolation_is_linear_between_nodes() {
        let g = GridFunction::sample(0.0, 0.5, 4, |x| 2.0 * x).unwrap();
        assert!((g.interpolate(0.3) - 0.6).abs() < 1e-15);
        assert_eq!(g.interpolate(-1.0), 0.0);
        assert_eq!(g.interpolate(5.0), 4.0);
    }
}
