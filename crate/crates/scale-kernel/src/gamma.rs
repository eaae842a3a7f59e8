//! Scale function of the gamma risk process (q = 0) by the renewal series
//!
//!   W(x) = (1/c) Σ_{n≥0} ρ^n M^{*n}(x),   ρ = 1/(1+θ),
//!
//! where M is the ladder-height distribution with density m(y) = βE1(βy).
//! Terms n = 0, 1 are exact. The two-fold term M^{*2} and its density m₂
//! are computed by quadrature from the symmetric split of the convolution,
//! so the log singularity of m is only integrated against smooth factors.
//! Terms n ≥ 3 come from product integration on a uniform grid, using the
//! exact linear-interpolation weights of dM on each cell, followed by
//! Richardson extrapolation against the same grid with half the cells.

use rayon::prelude::*;
use special_functions::{exp_integral_e1, tanh_sinh};

use crate::{Error, Result};

/// M(y) = βyE1(βy) + 1 − e^{−βy}.
pub fn ladder_cdf(beta: f64, y: f64) -> f64 {
    if y <= 0.0 {
        return 0.0;
    }
    let u = beta * y;
    u * exp_integral_e1(u).unwrap_or(0.0) - (-u).exp_m1()
}

/// m(y) = βE1(βy), infinite at 0.
pub fn ladder_density(beta: f64, y: f64) -> f64 {
    if y <= 0.0 {
        return f64::INFINITY;
    }
    beta * exp_integral_e1(beta * y).unwrap_or(0.0)
}

// ∫₀^y t dM(t) = β[(y²/2)E1(βy) + (1 − e^{−βy}(1+βy))/(2β²)].
fn ladder_first_moment(beta: f64, y: f64) -> f64 {
    if y <= 0.0 {
        return 0.0;
    }
    let u = beta * y;
    let poly = -(-u).exp_m1() - u * (-u).exp();
    beta * (0.5 * y * y * exp_integral_e1(u).unwrap_or(0.0) + poly / (2.0 * beta * beta))
}

// M^{*2}(x) = 2∫₀^{x/2} M(x−y) m(y) dy − M(x/2)²
fn two_fold_cdf(beta: f64, x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Ok(0.0);
    }
    let half = 0.5 * x;
    let i = tanh_sinh(|y| ladder_cdf(beta, x - y) * ladder_density(beta, y), 0.0, half, 1e-15)?;
    let mh = ladder_cdf(beta, half);
    Ok(2.0 * i - mh * mh)
}

// m₂(x) = 2∫₀^{x/2} m(x−y) m(y) dy
fn two_fold_density(beta: f64, x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Ok(0.0);
    }
    let i = tanh_sinh(|y| ladder_density(beta, x - y) * ladder_density(beta, y), 0.0, 0.5 * x, 1e-14)?;
    Ok(2.0 * i)
}

const TERM_FLOOR: f64 = 1e-14;
// Cells near 0 in which the two-fold term is evaluated exactly.
const EXACT_CELLS: f64 = 4.0;

#[derive(Debug, Clone)]
pub struct GammaSeries {
    beta: f64,
    rho: f64,
    inv_c: f64,
    h: f64,
    // M^{*2}, m₂ at the nodes 0, h, ..., N h
    cdf2: Vec<f64>,
    den2: Vec<f64>,
    // Σ_{n≥3} ρ^n M^{*n} and Σ_{n≥3} ρ^n m_n at the nodes
    tail_cdf: Vec<f64>,
    tail_density: Vec<f64>,
    terms: usize,
}

struct Tails {
    cdf: Vec<f64>,
    den: Vec<f64>,
    terms: usize,
}

fn check(extent: f64, cells: usize) -> Result<()> {
    if !(extent > 0.0) || !extent.is_finite() {
        return Err(Error::Domain { what: "gamma series extent", value: extent });
    }
    if cells < 16 || cells % 2 == 1 {
        return Err(Error::Domain { what: "gamma series cells (even, ≥ 16)", value: cells as f64 });
    }
    Ok(())
}

impl GammaSeries {
    /// Series on `cells` uniform cells of [0, extent].
    pub fn build(shape: f64, rate: f64, loading: f64, extent: f64, cells: usize) -> Result<Self> {
        check(extent, cells)?;
        let beta = rate;
        let rho = 1.0 / (1.0 + loading);
        let inv_c = rate / ((1.0 + loading) * shape);
        let fine_h = extent / cells as f64;
        let nodes = |h: f64, n: usize| -> Vec<f64> { (0..=n).map(|i| i as f64 * h).collect() };

        let xs_fine = nodes(fine_h, cells);
        let cdf2_fine = xs_fine.par_iter().map(|&x| two_fold_cdf(beta, x)).collect::<Result<Vec<_>>>()?;
        let den2_fine = xs_fine.par_iter().map(|&x| two_fold_density(beta, x)).collect::<Result<Vec<_>>>()?;
        let coarse_n = cells / 2;
        let every_other = |v: &[f64]| -> Vec<f64> { v.iter().step_by(2).copied().collect() };
        let cdf2 = every_other(&cdf2_fine);
        let den2 = every_other(&den2_fine);

        let fine = higher_terms(beta, rho, fine_h, &cdf2_fine, &den2_fine, extent);
        let coarse = higher_terms(beta, rho, 2.0 * fine_h, &cdf2, &den2, extent);
        let extrapolate = |f: &[f64], c: &[f64]| -> Vec<f64> {
            c.iter().enumerate().map(|(i, &v)| (4.0 * f[2 * i] - v) / 3.0).collect()
        };
        Ok(Self {
            beta,
            rho,
            inv_c,
            h: extent / coarse_n as f64,
            cdf2,
            den2,
            tail_cdf: extrapolate(&fine.cdf, &coarse.cdf),
            tail_density: extrapolate(&fine.den, &coarse.den),
            terms: fine.terms,
        })
    }

    pub fn extent(&self) -> f64 {
        self.h * (self.tail_cdf.len() - 1) as f64
    }

    /// Node spacing of the stored (extrapolated) grid.
    pub fn spacing(&self) -> f64 {
        self.h
    }

    /// Number of series terms kept, counting n = 0.
    pub fn terms(&self) -> usize {
        self.terms
    }

    fn locate(&self, x: f64) -> Result<(usize, f64)> {
        let ext = self.extent();
        if x > ext * (1.0 + 1e-12) {
            return Err(Error::Domain { what: "gamma scale argument beyond series extent", value: x });
        }
        let last = self.tail_cdf.len() - 1;
        let pos = (x / self.h).max(0.0);
        let i = (pos.floor() as usize).min(last - 1);
        Ok((i, (pos - i as f64).clamp(0.0, 1.0)))
    }

    pub fn w(&self, x: f64) -> Result<f64> {
        if x < 0.0 {
            return Ok(0.0);
        }
        let (i, t) = self.locate(x)?;
        let two = if x < EXACT_CELLS * self.h {
            two_fold_cdf(self.beta, x)?
        } else {
            hermite(&self.cdf2, &self.den2, self.h, i, t)
        };
        let rest = hermite(&self.tail_cdf, &self.tail_density, self.h, i, t);
        Ok(self.inv_c * (1.0 + self.rho * ladder_cdf(self.beta, x) + self.rho * self.rho * two + rest))
    }

    pub fn w_prime(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain { what: "gamma W′ argument (must be > 0)", value: x });
        }
        let (i, t) = self.locate(x)?;
        let two = if x < EXACT_CELLS * self.h {
            two_fold_density(self.beta, x)?
        } else {
            lagrange(&self.den2, i, t)
        };
        let rest = lagrange(&self.tail_density, i, t);
        Ok(self.inv_c * (self.rho * ladder_density(self.beta, x) + self.rho * self.rho * two + rest))
    }
}

// Σ_{n≥3} ρ^n M^{*n} and Σ_{n≥3} ρ^n m_n on a grid of spacing h.
fn higher_terms(beta: f64, rho: f64, h: f64, cdf2: &[f64], den2: &[f64], extent: f64) -> Tails {
    let n = cdf2.len() - 1;
    // ∫_{cell j} f dM ≈ w0 f(jh) + w1 f((j+1)h), exact for linear f
    let weights: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let (y0, y1) = (j as f64 * h, (j + 1) as f64 * h);
            let dm = ladder_cdf(beta, y1) - ladder_cdf(beta, y0);
            let mom = ladder_first_moment(beta, y1) - ladder_first_moment(beta, y0) - y0 * dm;
            let w1 = mom / h;
            (dm - w1, w1)
        })
        .collect();
    let product = |prev: &[f64], i: usize| -> f64 {
        let mut s = 0.0;
        for (j, &(w0, w1)) in weights.iter().enumerate().take(i) {
            s += w0 * prev[i - j] + w1 * prev[i - j - 1];
        }
        s
    };
    let max_terms = ((1e-12f64).ln() / rho.ln()).ceil() as usize + 1;
    let mut cdf_n = cdf2.to_vec();
    let mut den_n = den2.to_vec();
    let mut weight = rho * rho;
    let mut cdf = vec![0.0; n + 1];
    let mut den = vec![0.0; n + 1];
    let mut terms = 3;
    while terms <= max_terms {
        cdf_n = (0..=n).into_par_iter().map(|i| product(&cdf_n, i)).collect();
        den_n = (0..=n).into_par_iter().map(|i| product(&den_n, i)).collect();
        weight *= rho;
        for (t, v) in cdf.iter_mut().zip(&cdf_n) {
            *t += weight * v;
        }
        for (t, v) in den.iter_mut().zip(&den_n) {
            *t += weight * v;
        }
        terms += 1;
        let sup_cdf = cdf_n.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
        let sup_den = den_n.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
        if weight * sup_cdf < TERM_FLOOR && weight * sup_den * extent < TERM_FLOOR {
            break;
        }
    }
    Tails { cdf, den, terms }
}

// Cubic Hermite on cell i with slopes from the derivative array.
fn hermite(y: &[f64], dy: &[f64], h: f64, i: usize, t: f64) -> f64 {
    let (y0, y1) = (y[i], y[i + 1]);
    let (d0, d1) = (dy[i] * h, dy[i + 1] * h);
    let t2 = t * t;
    let t3 = t2 * t;
    (2.0 * t3 - 3.0 * t2 + 1.0) * y0 + (t3 - 2.0 * t2 + t) * d0 + (-2.0 * t3 + 3.0 * t2) * y1 + (t3 - t2) * d1
}

// Four-point Lagrange away from 0, linear on the first cell.
fn lagrange(v: &[f64], i: usize, t: f64) -> f64 {
    let last = v.len() - 1;
    if i == 0 || last < 3 {
        return v[i] + t * (v[i + 1] - v[i]);
    }
    let s = if i + 2 > last { last - 3 } else { i - 1 };
    let u = (i - s) as f64 + t;
    let l0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
    let l1 = u * (u - 2.0) * (u - 3.0) / 2.0;
    let l2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
    let l3 = u * (u - 1.0) * (u - 2.0) / 6.0;
    l0 * v[s] + l1 * v[s + 1] + l2 * v[s + 2] + l3 * v[s + 3]
}
