//! Ruin-before-drawdown probability, depletion laws and transforms for one
//! model at one drawdown level a.
//!
//! Every quantity has a generic form built from the killed resolvent R_a^(q),
//! the jump measure ν and Δ^(q)(a). With `Route::Auto` the Cramér–Lundberg
//! model uses closed forms, the gamma model the G kernel and the stable model
//! the H kernel; `Route::Generic` forces the resolvent quadrature for all.

use std::sync::Arc;

use levy_core::LevyModel;
use num_complex::Complex64;
use scale_kernel::{Atom, DensityFn, MixedMeasure, ScaleContext, ScaleOptions};
use special_functions::{exp_integral_e1_scaled, quad_semi_infinite, Tail};

use crate::law::{Conditioning, DepletionLaw, Quantity};
use crate::{Error, Result};

/// Below this no-ruin probability conditional laws are refused.
pub const CONDITIONING_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Closed forms and model kernels where available.
    Auto,
    /// Resolvent quadrature for every model.
    Generic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DepletionOptions {
    pub route: Route,
    pub scale: ScaleOptions,
    /// Absolute tolerance of the quadratures.
    pub tol: f64,
}

impl Default for DepletionOptions {
    fn default() -> Self {
        Self { route: Route::Auto, scale: ScaleOptions::default(), tol: 1e-10 }
    }
}

#[derive(Debug, Clone)]
pub struct ConditionalLaws {
    pub no_ruin_probability: f64,
    pub predrawdown_record: DepletionLaw,
    pub overshoot: DepletionLaw,
    pub max_level: DepletionLaw,
}

#[derive(Debug, Clone, Copy)]
struct ClParams {
    rate: f64,
    loading: f64,
}

/// Depletion analytics for a model at drawdown level a.
#[derive(Debug, Clone)]
pub struct Depletion {
    model: LevyModel,
    a: f64,
    opts: DepletionOptions,
    base: ScaleContext,
    resolvent: MixedMeasure,
    lam: f64,
    delta: f64,
}

fn check_nonneg(what: &'static str, v: f64) -> Result<()> {
    if !(v >= 0.0) || !v.is_finite() {
        return Err(Error::Domain { what, value: v });
    }
    Ok(())
}

impl Depletion {
    pub fn new(model: &LevyModel, a: f64, opts: &DepletionOptions) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::Domain { what: "drawdown level a", value: a });
        }
        let base = ScaleContext::new(model, 0.0, a, &opts.scale)?;
        let resolvent = base.resolvent_measure(a)?.with_tolerance(opts.tol);
        let lam = base.log_derivative(a)?;
        let delta = base.delta_coefficient(a)?;
        Ok(Self { model: model.clone(), a, opts: opts.clone(), base, resolvent, lam, delta })
    }

    pub fn model(&self) -> &LevyModel {
        &self.model
    }

    pub fn level(&self) -> f64 {
        self.a
    }

    pub fn route(&self) -> Route {
        self.opts.route
    }

    /// λ(a,0).
    pub fn log_derivative(&self) -> f64 {
        self.lam
    }

    /// Δ^(0)(a).
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// R_a^(0).
    pub fn resolvent(&self) -> &MixedMeasure {
        &self.resolvent
    }

    fn cl(&self) -> Option<ClParams> {
        match (self.opts.route, &self.model) {
            (Route::Auto, LevyModel::CramerLundbergExp { claim_rate, safety_loading, .. }) => {
                Some(ClParams { rate: *claim_rate, loading: *safety_loading })
            }
            _ => None,
        }
    }

    fn fast_gamma(&self) -> Option<(f64, f64)> {
        match (self.opts.route, &self.model) {
            (Route::Auto, LevyModel::GammaRisk { gamma_shape, gamma_rate, .. }) => Some((*gamma_shape, *gamma_rate)),
            _ => None,
        }
    }

    // (α, β) of the stable model on the Auto route.
    fn fast_stable(&self) -> Option<(f64, f64)> {
        match (self.opts.route, &self.model) {
            (Route::Auto, LevyModel::StableRisk { stability, .. }) => Some((*stability, self.model.jump_scale())),
            _ => None,
        }
    }

    pub(crate) fn context(&self, q: f64) -> Result<ScaleContext> {
        if q == 0.0 {
            Ok(self.base.clone())
        } else {
            Ok(ScaleContext::new(&self.model, q, self.a, &self.opts.scale)?)
        }
    }

    fn resolvent_at(&self, ctx: &ScaleContext) -> Result<MixedMeasure> {
        if ctx.q() == 0.0 {
            Ok(self.resolvent.clone())
        } else {
            Ok(ctx.resolvent_measure(self.a)?.with_tolerance(self.opts.tol))
        }
    }

    fn nu_bar(&self, z: f64) -> f64 {
        self.model.levy_tail(z).unwrap_or(f64::NAN)
    }

    fn discounted(&self, gamma: f64, z: f64) -> f64 {
        self.model.discounted_tail(gamma, z).unwrap_or(f64::NAN)
    }

    // W(x∧a)/W(a): probability of reaching a before 0 (1 when x ≥ a).
    fn exit_up(&self, ctx: &ScaleContext, x: f64) -> Result<f64> {
        if x >= self.a {
            return Ok(1.0);
        }
        Ok(ctx.w(x)? / ctx.w(self.a)?)
    }

    fn resolvent_atom(&self) -> f64 {
        self.resolvent.atom_mass()
    }

    /// P_x(X̲_{τa} < 0).
    pub fn ruin_probability(&self, x: f64) -> Result<f64> {
        check_nonneg("initial surplus x", x)?;
        let p = self.exit_up(&self.base, x)?;
        let k = self.ruin_at_crossing(x)?;
        Ok((1.0 - p + p * k).clamp(0.0, 1.0))
    }

    /// P_x(X̲_{τa} ≥ 0).
    pub fn no_ruin_probability(&self, x: f64) -> Result<f64> {
        check_nonneg("initial surplus x", x)?;
        let p = self.exit_up(&self.base, x)?;
        Ok((p * (1.0 - self.ruin_at_crossing(x)?)).clamp(0.0, 1.0))
    }

    // Probability that the crossing at τ_a ends below 0, once the running
    // maximum has reached x ∨ a: ∫R[ν̄(v−y) − L_λ(v−y)], v = x ∨ a.
    fn ruin_at_crossing(&self, x: f64) -> Result<f64> {
        self.crossing_ruin_at_rate(x, self.lam)
    }

    // ∫R_a^(0)[ν̄(v−y) − L_λ(v−y)] for a given rate λ.
    fn crossing_ruin_at_rate(&self, x: f64, lam: f64) -> Result<f64> {
        let d = (x - self.a).max(0.0);
        let v = self.a + d;
        if let Some(cl) = self.cl() {
            return Ok(lam / (cl.rate + lam) * (-cl.rate * d).exp());
        }
        if let Some((shape, rate)) = self.fast_gamma() {
            let diff = self.g_kernel(rate, rate, v)? - self.g_kernel(rate + lam, rate, v)?;
            return Ok(shape * (-rate * v).exp() * diff);
        }
        if let Some((alpha, beta)) = self.fast_stable() {
            let diff = self.h_kernel(0.0, 0.0, 0.0, v)? - self.h_kernel(lam, 0.0, 0.0, v)?;
            return Ok(beta / alpha * diff);
        }
        Ok(self.resolvent.integrate_gaps(|_, u| self.nu_bar(u + d) - self.discounted(lam, u + d))?)
    }

    /// Law of Y_{τa−}. Independent of the initial surplus.
    pub fn predrawdown_record(&self) -> Result<DepletionLaw> {
        let a = self.a;
        let mut atoms = Vec::new();
        if self.model.bounded_variation() {
            atoms.push(Atom { location: 0.0, weight: self.nu_bar(a) * self.resolvent_atom() });
        }
        if self.delta > 0.0 {
            atoms.push(Atom { location: a, weight: self.delta });
        }
        let density: DensityFn = if let Some(cl) = self.cl() {
            // (μ/θ)(e^{−μ(a−y)/(1+θ)} − e^{−μ(a−y)})
            let ClParams { rate: mu, loading: th, .. } = cl;
            Arc::new(move |y: f64, u: f64| {
                if y < 0.0 || u < 0.0 {
                    0.0
                } else {
                    mu / th * ((-mu * u / (1.0 + th)).exp() - (-mu * u).exp())
                }
            })
        } else {
            let r = self.resolvent.density_fn();
            let model = self.model.clone();
            Arc::new(move |y: f64, u: f64| {
                if y <= 0.0 || u <= 0.0 {
                    return 0.0;
                }
                let d = r(y, u);
                if d == 0.0 {
                    0.0
                } else {
                    d * model.levy_tail(u).unwrap_or(f64::NAN)
                }
            })
        };
        let law = MixedMeasure::finite(atoms, density, 0.0, a).with_tolerance(self.opts.tol);
        Ok(self.law(Quantity::PredrawdownRecord, Conditioning::Unconditional, f64::NAN, law))
    }

    // h ↦ ∫R ν(a−y+h) for h > 0.
    fn overshoot_density_fn(&self) -> DensityFn {
        if let Some(cl) = self.cl() {
            let mu = cl.rate;
            return Arc::new(move |h: f64, _| if h < 0.0 { 0.0 } else { mu * (-mu * h).exp() });
        }
        let tol = self.opts.tol;
        let r = self.resolvent.clone().with_relative_tolerance(10.0 * tol);
        let upper = self.a;
        let model = self.model.clone();
        Arc::new(move |h: f64, _| {
            if h < 0.0 {
                return 0.0;
            }
            // The density grows like ν̄(h) as h → 0 for infinite activity, so
            // the integral is taken relative to that scale; ν(u+h)/ν̄(h) is
            // formed directly for the stable model, where ν itself overflows.
            let scale = if h > 0.0 { model.levy_tail(h).unwrap_or(1.0).max(1.0) } else { 1.0 };
            let stable = match &model {
                LevyModel::StableRisk { stability, .. } if scale > 1.0 => Some(*stability),
                _ => None,
            };
            let ratio = |z: f64| match stable {
                Some(al) => al / z * (h / z).powf(al),
                None => model.levy_density(z).unwrap_or(f64::NAN) / scale,
            };
            // ν(u+h) varies on the scale h near u = 0
            let integrand = |_: f64, u: f64| {
                let z = u + h;
                if z > 0.0 {
                    ratio(z)
                } else {
                    0.0
                }
            };
            // cut at h and then geometrically so no piece spans many decades
            let mut cuts = vec![h];
            let mut c = 30.0 * h;
            while c > 0.0 && c < upper {
                cuts.push(c);
                c *= 1e16;
            }
            let r = r.clone().with_tolerance(10.0 * tol / scale);
            scale * r.integrate_from_upper(integrand, &cuts).unwrap_or(f64::NAN)
        })
    }

    // Decay of the overshoot density, for truncating h-integrals.
    fn overshoot_tail(&self, density: &DensityFn) -> Tail {
        match self.model {
            LevyModel::CramerLundbergExp { claim_rate: mu, .. } | LevyModel::PerturbedClDemo { claim_rate: mu, .. } => {
                // density(h) = density(0)e^{−μh}
                Tail::Exponential { rate: mu, bound: density(0.0, f64::INFINITY).abs().max(mu) }
            }
            LevyModel::GammaRisk { gamma_rate: b, .. } => {
                // ν(z+h) ≤ e^{−βh}ν(z)
                Tail::Exponential { rate: b, bound: density(0.0, f64::INFINITY).abs().max(b) }
            }
            LevyModel::StableRisk { stability, .. } => Tail::Power {
                exponent: stability + 1.0,
                bound: self.model.jump_scale() * self.resolvent.total_mass().unwrap_or(1.0).abs() * 4.0,
            },
        }
    }

    /// Law of the overshoot Y_{τa} − a. Independent of the initial surplus.
    pub fn overshoot(&self) -> Result<DepletionLaw> {
        let density = self.overshoot_density_fn();
        let tail = self.overshoot_tail(&density);
        let atoms = if self.delta > 0.0 { vec![Atom { location: 0.0, weight: self.delta }] } else { vec![] };
        let law = MixedMeasure::semi_infinite(atoms, density, 0.0, tail).with_tolerance(self.opts.tol);
        Ok(self.law(Quantity::Overshoot, Conditioning::Unconditional, f64::NAN, law))
    }

    /// Law of X̄_{τa}: x plus an exponential variable of rate λ(a,0).
    pub fn max_level(&self, x: f64) -> Result<DepletionLaw> {
        check_nonneg("initial surplus x", x)?;
        let lam = self.lam;
        let density: DensityFn = Arc::new(move |v: f64, _| if v < x { 0.0 } else { lam * (-lam * (v - x)).exp() });
        let law = MixedMeasure::semi_infinite(vec![], density, x, Tail::Exponential { rate: lam, bound: lam })
            .with_tolerance(self.opts.tol);
        Ok(self.law(Quantity::MaxLevel, Conditioning::Unconditional, x, law))
    }

    fn law(&self, q: Quantity, c: Conditioning, x: f64, m: MixedMeasure) -> DepletionLaw {
        DepletionLaw::new(q, c, self.a, x, self.model.model_id(), m)
    }

    /// The three laws on {X̲_{τa} ≥ 0}, started from x > 0.
    pub fn conditional_laws(&self, x: f64) -> Result<ConditionalLaws> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::Domain { what: "initial surplus x (must be > 0)", value: x });
        }
        let p = self.exit_up(&self.base, x)?;
        let nr = p * (1.0 - self.ruin_at_crossing(x)?);
        if !(nr >= CONDITIONING_FLOOR) {
            return Err(Error::Conditioning { probability: nr });
        }
        // no-ruin probability once the maximum has reached v₀ = x ∨ a
        let e = nr / p;
        let a = self.a;
        let d = (x - a).max(0.0);
        let v0 = a + d;
        let lam = self.lam;
        let tol = self.opts.tol;
        // e^{−λ(h−d)⁺}: the maximum, v₀ + Exp(λ), must stay above a + h
        let keep = move |h: f64| if h <= d { 1.0 } else { (-lam * (h - d)).exp() };

        let record = if self.cl().is_some() {
            let mut law = self.predrawdown_record()?;
            law.conditioning = Conditioning::NoRuin;
            law.x = x;
            law
        } else {
            // J(y) = ∫ν(a−y+h)e^{−λ(h−d)⁺}dh = ν̄(a−y) − ν̄(v₀−y) + L_λ(v₀−y)
            let model = self.model.clone();
            let j = move |u: f64| {
                let far = if d > 0.0 {
                    model.levy_tail(u).unwrap_or(f64::NAN) - model.levy_tail(u + d).unwrap_or(f64::NAN)
                } else {
                    0.0
                };
                far + model.discounted_tail(lam, u + d).unwrap_or(f64::NAN)
            };
            let mut atoms = Vec::new();
            if self.model.bounded_variation() {
                atoms.push(Atom { location: 0.0, weight: self.resolvent_atom() * j(a) / e });
            }
            if self.delta > 0.0 {
                atoms.push(Atom { location: a, weight: self.delta / e });
            }
            let r = self.resolvent.density_fn();
            let density: DensityFn = Arc::new(move |y: f64, u: f64| {
                if y <= 0.0 || u <= 0.0 {
                    return 0.0;
                }
                let dr = r(y, u);
                if dr == 0.0 {
                    0.0
                } else {
                    dr * j(u) / e
                }
            });
            let m = MixedMeasure::finite(atoms, density, 0.0, a).with_tolerance(tol);
            self.law(Quantity::PredrawdownRecord, Conditioning::NoRuin, x, m)
        };

        let overshoot = {
            let base = self.overshoot_density_fn();
            let tail = self.overshoot_tail(&base);
            let density: DensityFn = Arc::new(move |h: f64, u: f64| if h < 0.0 { 0.0 } else { base(h, u) * keep(h) / e });
            let atoms = if self.delta > 0.0 { vec![Atom { location: 0.0, weight: self.delta / e }] } else { vec![] };
            let tail = match tail {
                Tail::Exponential { rate, bound } => Tail::Exponential { rate, bound: bound / e },
                Tail::Power { exponent, bound } => Tail::Power { exponent, bound: bound / e },
            };
            let m = MixedMeasure::semi_infinite(atoms, density, 0.0, tail).with_tolerance(tol).with_breaks(&[d]);
            self.law(Quantity::Overshoot, Conditioning::NoRuin, x, m)
        };

        let max_level = {
            // λe^{−λ(v−v₀)}·P(overshoot ≤ v − a), normalized
            let (cdf_h, norm): (Arc<dyn Fn(f64) -> f64 + Send + Sync>, f64) = if let Some(cl) = self.cl() {
                let mu = cl.rate;
                let f: Arc<dyn Fn(f64) -> f64 + Send + Sync> = Arc::new(move |z: f64| -(-mu * z).exp_m1());
                let g = f.clone();
                let n = quad_semi_infinite(
                    |v| lam * (-lam * (v - v0)).exp() * g(v - a),
                    v0,
                    Tail::Exponential { rate: lam, bound: lam },
                    tol,
                )?;
                (f, n)
            } else {
                // P(overshoot ≤ z); the inner integrand changes on the scale z
                let r = self.resolvent.clone().with_tolerance(10.0 * tol).with_relative_tolerance(10.0 * tol);
                let model = self.model.clone();
                let delta = self.delta;
                let f: Arc<dyn Fn(f64) -> f64 + Send + Sync> = Arc::new(move |z: f64| {
                    let inner = r.integrate_from_upper(
                        |_, u| model.levy_tail(u).unwrap_or(f64::NAN) - model.levy_tail(u + z).unwrap_or(f64::NAN),
                        &[z],
                    );
                    delta + inner.unwrap_or(f64::NAN)
                });
                (f, e)
            };
            let density: DensityFn = Arc::new(move |v: f64, _| {
                if v < v0 {
                    0.0
                } else {
                    lam * (-lam * (v - v0)).exp() * cdf_h(v - a) / norm
                }
            });
            let m = MixedMeasure::semi_infinite(vec![], density, v0, Tail::Exponential { rate: lam, bound: lam / norm })
                .with_tolerance(tol);
            self.law(Quantity::MaxLevel, Conditioning::NoRuin, x, m)
        };

        Ok(ConditionalLaws { no_ruin_probability: nr, predrawdown_record: record, overshoot, max_level })
    }

    /// E[e^{−qτa}] = ∫ν̄(a−y)R_a^(q)(dy) + Δ^(q)(a); exactly 1 at q = 0.
    pub fn tau_laplace(&self, q: f64) -> Result<f64> {
        check_nonneg("discount rate q", q)?;
        if q == 0.0 {
            return Ok(1.0);
        }
        let ctx = self.context(q)?;
        self.tau_laplace_with(&ctx)
    }

    fn tau_laplace_with(&self, ctx: &ScaleContext) -> Result<f64> {
        let q = ctx.q();
        if q == 0.0 {
            return Ok(1.0);
        }
        if self.cl().is_some() {
            // ((Φ+μ)/μ)(1 − Φ/λ(a,q))e^{Φa}, rearranged so the difference
            // λ − Φ is never formed
            return Ok(self.tau_transform_complex(Complex64::new(q, 0.0))?.re);
        }
        if let Some((alpha, beta)) = self.fast_stable() {
            return Ok(beta / alpha * self.h_kernel_with(ctx, 0.0, 0.0, self.a)?);
        }
        let r = self.resolvent_at(ctx)?;
        Ok(r.integrate_gaps(|_, u| self.nu_bar(u))? + ctx.delta_coefficient(self.a)?)
    }

    /// E[e^{−qτa − rḠ}] for q ≥ 0, q + r ≥ 0.
    pub fn bivariate_laplace(&self, q: f64, r: f64) -> Result<f64> {
        check_nonneg("discount rate q", q)?;
        check_nonneg("discount rate q + r", q + r)?;
        if q == 0.0 && r == 0.0 {
            return Ok(1.0);
        }
        let cq = self.context(q)?;
        let cqr = self.context(q + r)?;
        Ok(cq.log_derivative(self.a)? / cqr.log_derivative(self.a)? * self.tau_laplace_with(&cq)?)
    }

    /// E[e^{−rḠ}] = λ(a,0)/λ(a,r).
    pub fn laplace_gbar(&self, r: f64) -> Result<f64> {
        check_nonneg("discount rate r", r)?;
        if r == 0.0 {
            return Ok(1.0);
        }
        Ok(self.lam / self.context(r)?.log_derivative(self.a)?)
    }

    /// E[e^{−q(τa − Ḡ)}] = (λ(a,q)/λ(a,0))·E[e^{−qτa}].
    pub fn laplace_speed(&self, q: f64) -> Result<f64> {
        check_nonneg("discount rate q", q)?;
        if q == 0.0 {
            return Ok(1.0);
        }
        let cq = self.context(q)?;
        Ok(cq.log_derivative(self.a)? / self.lam * self.tau_laplace_with(&cq)?)
    }

    /// E_x[e^{−qτa − rḠ}; X̲_{τa} ≥ 0] for q ≥ 0, q + r ≥ 0.
    pub fn joint_laplace_on_no_ruin(&self, x: f64, q: f64, r: f64) -> Result<f64> {
        check_nonneg("initial surplus x", x)?;
        check_nonneg("discount rate q", q)?;
        check_nonneg("discount rate q + r", q + r)?;
        let cq = self.context(q)?;
        let cqr = self.context(q + r)?;
        let a = self.a;
        let p = self.exit_up(&cqr, x)?;
        if p == 0.0 {
            return Ok(0.0);
        }
        let lq = cq.log_derivative(a)?;
        let lqr = cqr.log_derivative(a)?;
        let d = (x - a).max(0.0);
        let inner = if q == 0.0 {
            // ∫R ν̄ + Δ = 1 at q = 0; keeps the value consistent with the
            // ruin probability
            1.0 - self.crossing_ruin_at_rate(x, lqr)?
        } else if let Some(cl) = self.cl() {
            let mu = cl.rate;
            self.tau_laplace_with(&cq)? * (1.0 - (-mu * d).exp() * lqr / (mu + lqr))
        } else if let Some((alpha, beta)) = self.fast_stable() {
            let v = a + d;
            let near = if d > 0.0 {
                self.h_kernel_with(&cq, 0.0, 0.0, a)? - self.h_kernel_with(&cq, 0.0, 0.0, v)?
            } else {
                0.0
            };
            beta / alpha * (near + self.h_kernel_with(&cq, lqr, 0.0, v)?)
        } else {
            let rq = self.resolvent_at(&cq)?;
            let j = rq.integrate_gaps(|_, u| {
                let far = if d > 0.0 { self.nu_bar(u) - self.nu_bar(u + d) } else { 0.0 };
                far + self.discounted(lqr, u + d)
            })?;
            j + cq.delta_coefficient(a)?
        };
        Ok(p * lq / lqr * inner)
    }

    /// E_x[e^{−q(τa − Ḡ)} | X̲_{τa} ≥ 0].
    pub fn conditional_speed_laplace(&self, x: f64, q: f64) -> Result<f64> {
        let nr = self.no_ruin_probability(x)?;
        if !(nr >= CONDITIONING_FLOOR) {
            return Err(Error::Conditioning { probability: nr });
        }
        Ok(self.joint_laplace_on_no_ruin(x, q, -q)? / nr)
    }

    /// G_{γ,b}(v) = ∫R_a^(0)(dy) e^{by} e^{γ(v−y)}E₁(γ(v−y)) for the gamma model,
    /// v ≥ a, γ > 0.
    pub fn g_kernel(&self, gamma: f64, b: f64, v: f64) -> Result<f64> {
        if !matches!(self.model, LevyModel::GammaRisk { .. }) {
            return Err(Error::Unsupported("the G kernel is defined for the gamma risk process".into()));
        }
        if !(gamma > 0.0) {
            return Err(Error::Domain { what: "G kernel rate γ", value: gamma });
        }
        if !(v >= self.a) {
            return Err(Error::Domain { what: "G kernel argument v (must be ≥ a)", value: v });
        }
        let a = self.a;
        let d = v - a;
        Ok(self.resolvent.integrate_gaps(|y, u| {
            (b * y).exp() * exp_integral_e1_scaled(gamma * (u + d)).unwrap_or(f64::NAN)
        })?)
    }

    /// H_{γ₁,γ₂,q}(v) = (α/β)∫R_a^(q)(dy) e^{−γ₂y} L_{γ₁}(v−y), where
    /// L_γ(z) = ∫₀^∞ e^{−γh}ν(z+h)dh, for the stable model, v ≥ a. With this
    /// scaling H_{0,0,0}(a) = α/β.
    pub fn h_kernel(&self, g1: f64, g2: f64, q: f64, v: f64) -> Result<f64> {
        check_nonneg("discount rate q", q)?;
        let ctx = self.context(q)?;
        self.h_kernel_with(&ctx, g1, g2, v)
    }

    fn h_kernel_with(&self, ctx: &ScaleContext, g1: f64, g2: f64, v: f64) -> Result<f64> {
        let alpha = match self.model {
            LevyModel::StableRisk { stability, .. } => stability,
            _ => return Err(Error::Unsupported("the H kernel is defined for the stable risk process".into())),
        };
        check_nonneg("H kernel rate γ₁", g1)?;
        if !(v >= self.a) {
            return Err(Error::Domain { what: "H kernel argument v (must be ≥ a)", value: v });
        }
        let beta = self.model.jump_scale();
        let d = v - self.a;
        let r = self.resolvent_at(ctx)?;
        let integral = r.integrate_gaps(|y, u| {
            let damp = if g2 == 0.0 { 1.0 } else { (-g2 * y).exp() };
            damp * self.discounted(g1, u + d)
        })?;
        Ok(alpha / beta * integral)
    }
}
