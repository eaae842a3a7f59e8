//! Evaluation contexts for W^(q) and derived quantities.

use std::sync::Arc;

use levy_core::LevyModel;
use num_complex::Complex64;
use special_functions::{invert_laplace, mittag_leffler};
use statrs::function::gamma::gamma;

use crate::gamma::GammaSeries;
use crate::measure::{Atom, DensityFn, MixedMeasure};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleMethod {
    /// Closed form or series where one exists, inversion otherwise.
    Auto,
    /// Always invert 1/(ψ(s) − q) numerically.
    Inversion,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScaleOptions {
    pub method: ScaleMethod,
    /// Grid cells over [0, extent] for the gamma series.
    pub grid_cells: usize,
    /// Let gamma contexts with q > 0 fall back to inversion (experimental).
    pub allow_gamma_inversion: bool,
}

impl Default for ScaleOptions {
    fn default() -> Self {
        Self { method: ScaleMethod::Auto, grid_cells: 2048, allow_gamma_inversion: false }
    }
}

#[derive(Debug, Clone)]
enum Repr {
    // W(x) = up·e^{Φx} − down·e^{−decay·x}
    Cl { up: f64, down: f64, decay: f64 },
    // W(x) = (α/κ) x^{α−1} E′_{α,1}(p x^α), p = q/κ
    Stable { alpha: f64, kappa: f64, p: f64 },
    Gamma(Arc<GammaSeries>),
    Inversion,
}

/// A model with a fixed q. Cheap to clone; immutable after construction.
#[derive(Debug, Clone)]
pub struct ScaleContext {
    model: LevyModel,
    q: f64,
    phi: f64,
    repr: Repr,
}

impl ScaleContext {
    /// `extent` is the largest argument the caller will evaluate at; only
    /// the gamma series uses it.
    pub fn new(model: &LevyModel, q: f64, extent: f64, opts: &ScaleOptions) -> Result<Self> {
        model.validate()?;
        if !(q >= 0.0) || !q.is_finite() {
            return Err(Error::Domain { what: "scale context q", value: q });
        }
        let phi = model.phi_inverse(q)?;
        let repr = match (opts.method, model) {
            (ScaleMethod::Inversion, _) => Repr::Inversion,
            (_, LevyModel::CramerLundbergExp { poisson_intensity: l, claim_rate: mu, .. }) => {
                let c = model.premium_rate();
                let pm = phi + mu;
                let den = c * pm * pm - l * mu;
                Repr::Cl { up: pm * pm / den, down: l * mu / (c * den), decay: mu - l * mu / (c * pm) }
            }
            (_, LevyModel::StableRisk { stability, .. }) => {
                let kappa = model.stable_exponent_scale();
                Repr::Stable { alpha: *stability, kappa, p: q / kappa }
            }
            (_, LevyModel::GammaRisk { gamma_shape, gamma_rate, safety_loading }) => {
                if q > 0.0 {
                    if !opts.allow_gamma_inversion {
                        return Err(Error::Unsupported(format!(
                            "gamma risk process scale functions are available at q = 0 only (requested q = {q}); \
                             enable the experimental inversion fallback to go further"
                        )));
                    }
                    Repr::Inversion
                } else {
                    Repr::Gamma(Arc::new(GammaSeries::build(
                        *gamma_shape,
                        *gamma_rate,
                        *safety_loading,
                        extent,
                        opts.grid_cells,
                    )?))
                }
            }
            (_, LevyModel::PerturbedClDemo { .. }) => Repr::Inversion,
        };
        Ok(Self { model: model.clone(), q, phi, repr })
    }

    pub fn model(&self) -> &LevyModel {
        &self.model
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Φ(q).
    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn uses_inversion(&self) -> bool {
        matches!(self.repr, Repr::Inversion)
    }

    /// W^(q)(0).
    pub fn w_at_zero(&self) -> f64 {
        self.model.scale_at_zero()
    }

    pub fn w(&self, x: f64) -> Result<f64> {
        if x < 0.0 {
            return Ok(0.0);
        }
        match &self.repr {
            Repr::Cl { up, down, decay } => Ok(up * (self.phi * x).exp() - down * (-decay * x).exp()),
            Repr::Stable { alpha, kappa, p } => {
                if x == 0.0 {
                    return Ok(0.0);
                }
                let e1 = mittag_leffler(*alpha, p * x.powf(*alpha), 1)?;
                Ok(alpha / kappa * x.powf(alpha - 1.0) * e1)
            }
            Repr::Gamma(series) => series.w(x),
            Repr::Inversion => {
                if x == 0.0 {
                    return Ok(self.w_at_zero());
                }
                self.invert(x, |_| Complex64::new(1.0, 0.0), 0.0)
            }
        }
    }

    /// Right derivative W′₊(x), x > 0.
    pub fn w_prime(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain { what: "W′ argument (must be > 0)", value: x });
        }
        match &self.repr {
            Repr::Cl { up, down, decay } => {
                Ok(up * self.phi * (self.phi * x).exp() + down * decay * (-decay * x).exp())
            }
            Repr::Stable { alpha, kappa, p } => {
                let a = *alpha;
                let z = p * x.powf(a);
                let e1 = mittag_leffler(a, z, 1)?;
                let e2 = if *p == 0.0 { 0.0 } else { mittag_leffler(a, z, 2)? };
                Ok(a / kappa * ((a - 1.0) * x.powf(a - 2.0) * e1 + a * p * x.powf(2.0 * a - 2.0) * e2))
            }
            Repr::Gamma(series) => series.w_prime(x),
            Repr::Inversion => {
                // L[W′](s) = s/(ψ(s) − q) − W(0)
                let w0 = self.w_at_zero();
                self.invert(x, |s| s, w0)
            }
        }
    }

    /// W″(x), x > 0.
    pub fn w_second(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain { what: "W″ argument (must be > 0)", value: x });
        }
        match &self.repr {
            Repr::Cl { up, down, decay } => {
                Ok(up * self.phi * self.phi * (self.phi * x).exp() - down * decay * decay * (-decay * x).exp())
            }
            Repr::Stable { alpha, kappa, p } => {
                let a = *alpha;
                let z = p * x.powf(a);
                let e1 = mittag_leffler(a, z, 1)?;
                let (e2, e3) = if *p == 0.0 {
                    (0.0, 0.0)
                } else {
                    (mittag_leffler(a, z, 2)?, mittag_leffler(a, z, 3)?)
                };
                Ok(a / kappa
                    * ((a - 1.0) * (a - 2.0) * x.powf(a - 3.0) * e1
                        + 3.0 * a * (a - 1.0) * p * x.powf(2.0 * a - 3.0) * e2
                        + a * a * p * p * x.powf(3.0 * a - 3.0) * e3))
            }
            Repr::Gamma(_) => Err(Error::Unsupported(
                "W″ of the gamma risk process is not provided (it is not needed when σ = 0)".into(),
            )),
            Repr::Inversion => {
                let sigma = self.model.diffusion();
                if sigma > 0.0 {
                    // W(0) = 0 and W′(0+) = 2/σ²
                    let w1 = 2.0 / (sigma * sigma);
                    self.invert(x, |s| s * s, w1)
                } else {
                    let step = (1e-4f64).max(1e-4 * x).min(0.5 * x);
                    Ok((self.w_prime(x + step)? - self.w_prime(x - step)?) / (2.0 * step))
                }
            }
        }
    }

    // Inverts num(s)/(ψ(s) − q) − offset at x.
    fn invert(&self, x: f64, num: impl Fn(Complex64) -> Complex64, offset: f64) -> Result<f64> {
        let model = &self.model;
        let q = self.q;
        let v = invert_laplace(
            |s| {
                let d = model.laplace_exponent_complex(s) - q;
                Ok(smith_div(num(s), d) - offset)
            },
            x,
            self.phi,
        )?;
        Ok(v)
    }

    /// λ(a,q) = W′₊(a)/W(a).
    pub fn log_derivative(&self, a: f64) -> Result<f64> {
        if !(a > 0.0) {
            return Err(Error::Domain { what: "drawdown level a", value: a });
        }
        if let Repr::Stable { alpha, p, .. } = &self.repr {
            // (α−1)/a + αp a^{α−1} E″/E′, exact at q = 0
            let z = p * a.powf(*alpha);
            let tail = if *p == 0.0 {
                0.0
            } else {
                alpha * p * a.powf(alpha - 1.0) * mittag_leffler(*alpha, z, 2)? / mittag_leffler(*alpha, z, 1)?
            };
            return Ok((alpha - 1.0) / a + tail);
        }
        Ok(self.w_prime(a)? / self.w(a)?)
    }

    /// R_a^(q)(dy) = W(dy)/λ(a,q) − W(y)dy on [0, a].
    ///
    /// The density vanishes linearly at y = a. For the stable model, where
    /// integrands against R blow up there, it is evaluated from the gap
    /// a − y: exactly at q = 0, and by its first-order expansion on the
    /// sliver a − y < 10⁻⁶a otherwise.
    pub fn resolvent_measure(&self, a: f64) -> Result<MixedMeasure> {
        let lam = self.log_derivative(a)?;
        let atoms = if self.model.bounded_variation() {
            vec![Atom { location: 0.0, weight: self.w_at_zero() / lam }]
        } else {
            vec![]
        };
        let density: DensityFn = match self.repr {
            Repr::Stable { alpha, kappa, p: 0.0 } => {
                let c = 1.0 / (kappa * gamma(alpha));
                Arc::new(move |y: f64, u: f64| if y <= 0.0 || u <= 0.0 { 0.0 } else { c * y.powf(alpha - 2.0) * u })
            }
            Repr::Stable { .. } => {
                let sliver = 1e-6 * a;
                let slope = self.w_prime(a)? - self.w_second(a)? / lam;
                let ctx = self.clone();
                Arc::new(move |y: f64, u: f64| {
                    if y <= 0.0 || u <= 0.0 {
                        0.0
                    } else if u < sliver {
                        slope * u
                    } else {
                        match (ctx.w_prime(y), ctx.w(y)) {
                            (Ok(d), Ok(w)) => d / lam - w,
                            _ => f64::NAN,
                        }
                    }
                })
            }
            _ => {
                let ctx = self.clone();
                Arc::new(move |y: f64, u: f64| {
                    if y <= 0.0 || u <= 0.0 {
                        return 0.0;
                    }
                    match (ctx.w_prime(y), ctx.w(y)) {
                        (Ok(d), Ok(w)) => d / lam - w,
                        _ => f64::NAN,
                    }
                })
            }
        };
        Ok(MixedMeasure::finite(atoms, density, 0.0, a))
    }

    /// Δ^(q)(a) = (σ²/2)(W′(a) − W″(a)/λ(a,q)); zero without a Gaussian part.
    pub fn delta_coefficient(&self, a: f64) -> Result<f64> {
        if !(a > 0.0) {
            return Err(Error::Domain { what: "drawdown level a", value: a });
        }
        let sigma = self.model.diffusion();
        if sigma == 0.0 {
            return Ok(0.0);
        }
        let lam = self.log_derivative(a)?;
        let v = 0.5 * sigma * sigma * (self.w_prime(a)? - self.w_second(a)? / lam);
        Ok(v.max(0.0))
    }

    /// Rows (x, W(x), W′(x)) for a table dump.
    pub fn table(&self, xs: &[f64]) -> Result<Vec<(f64, f64, f64)>> {
        xs.iter()
            .map(|&x| {
                let d = if x > 0.0 { self.w_prime(x)? } else { f64::NAN };
                Ok((x, self.w(x)?, d))
            })
            .collect()
    }
}

// a/b without forming |b|², which overflows on the contour for tiny x.
fn smith_div(a: Complex64, b: Complex64) -> Complex64 {
    if b.re.abs() >= b.im.abs() {
        let r = b.im / b.re;
        let den = b.re + b.im * r;
        Complex64::new((a.re + a.im * r) / den, (a.im - a.re * r) / den)
    } else {
        let r = b.re / b.im;
        let den = b.re * r + b.im;
        Complex64::new((a.re * r + a.im) / den, (a.im * r - a.re) / den)
    }
}

/// F_{p,q,a}(y) = λ(a,q)·e^{−y λ(a,p)}: prefactor from `ctx_q`, decay from `ctx_p`.
pub fn excursion_kernel(ctx_p: &ScaleContext, ctx_q: &ScaleContext, a: f64, y: f64) -> Result<f64> {
    if !(y >= 0.0) {
        return Err(Error::Domain { what: "excursion kernel argument", value: y });
    }
    Ok(ctx_q.log_derivative(a)? * (-y * ctx_p.log_derivative(a)?).exp())
}
