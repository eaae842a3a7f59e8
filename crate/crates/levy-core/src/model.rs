use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use special_functions::{exp_integral_e1, exp_integral_e1_scaled, tanh_sinh};
use statrs::function::gamma::gamma;

use crate::{Error, Result};

/// A spectrally negative Lévy risk model.
///
/// JSON form: `{"variant": "...", "params": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", content = "params")]
pub enum LevyModel {
    /// Premium income at rate c = λ(1+θ)/μ minus compound Poisson Exp(μ) claims.
    CramerLundbergExp { poisson_intensity: f64, claim_rate: f64, safety_loading: f64 },
    /// Premium c = α(1+θ)/β minus a gamma subordinator with ν(dx) = αx⁻¹e^{−βx}dx.
    GammaRisk { gamma_shape: f64, gamma_rate: f64, safety_loading: f64 },
    /// Jumps ν(dx) = βx^{−1−α}dx. `levy_scale` defaults to α(α−1)/Γ(2−α),
    /// the value for which ψ(s) = s^α.
    StableRisk {
        stability: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        levy_scale: Option<f64>,
    },
    /// Drift plus Brownian motion minus compound Poisson Exp(μ) claims.
    #[serde(rename = "PerturbedCLDemo")]
    PerturbedClDemo { drift: f64, diffusion: f64, poisson_intensity: f64, claim_rate: f64 },
}

/// A model together with the initial surplus x.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    #[serde(flatten)]
    pub model: LevyModel,
    #[serde(default)]
    pub x: f64,
}

impl ModelSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ModelSpec =
            serde_json::from_str(text).map_err(|e| Error::Validation(format!("model JSON: {e}")))?;
        spec.validate()
    }

    pub fn validate(self) -> Result<Self> {
        self.model.validate()?;
        if !(self.x >= 0.0) || !self.x.is_finite() {
            return Err(Error::Validation(format!("initial surplus x must be ≥ 0, got {}", self.x)));
        }
        Ok(self)
    }
}

/// β = α(α−1)/Γ(2−α), the jump scale that makes ψ(s) = s^α exactly.
pub fn canonical_stable_scale(alpha: f64) -> f64 {
    alpha * (alpha - 1.0) / gamma(2.0 - alpha)
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Validation(format!("{name} must be positive and finite, got {v}")))
    }
}

impl LevyModel {
    pub fn cramer_lundberg(poisson_intensity: f64, claim_rate: f64, safety_loading: f64) -> Self {
        LevyModel::CramerLundbergExp { poisson_intensity, claim_rate, safety_loading }
    }

    pub fn gamma_risk(gamma_shape: f64, gamma_rate: f64, safety_loading: f64) -> Self {
        LevyModel::GammaRisk { gamma_shape, gamma_rate, safety_loading }
    }

    pub fn stable(stability: f64, levy_scale: Option<f64>) -> Self {
        LevyModel::StableRisk { stability, levy_scale }
    }

    pub fn perturbed(drift: f64, diffusion: f64, poisson_intensity: f64, claim_rate: f64) -> Self {
        LevyModel::PerturbedClDemo { drift, diffusion, poisson_intensity, claim_rate }
    }

    /// Returns the model if every parameter invariant and net profit hold.
    pub fn validate(&self) -> Result<()> {
        match *self {
            LevyModel::CramerLundbergExp { poisson_intensity, claim_rate, safety_loading } => {
                positive("poisson_intensity", poisson_intensity)?;
                positive("claim_rate", claim_rate)?;
                positive("safety_loading", safety_loading)
            }
            LevyModel::GammaRisk { gamma_shape, gamma_rate, safety_loading } => {
                positive("gamma_shape", gamma_shape)?;
                positive("gamma_rate", gamma_rate)?;
                positive("safety_loading", safety_loading)
            }
            LevyModel::StableRisk { stability, levy_scale } => {
                if !(stability > 1.0 && stability < 2.0) {
                    return Err(Error::Validation(format!(
                        "stability must lie strictly inside (1, 2), got {stability}"
                    )));
                }
                if let Some(b) = levy_scale {
                    positive("levy_scale", b)?;
                }
                Ok(())
            }
            LevyModel::PerturbedClDemo { drift, diffusion, poisson_intensity, claim_rate } => {
                positive("drift", drift)?;
                positive("diffusion", diffusion)?;
                positive("poisson_intensity", poisson_intensity)?;
                positive("claim_rate", claim_rate)?;
                if drift <= poisson_intensity / claim_rate {
                    return Err(Error::Validation(format!(
                        "net profit condition fails: drift {drift} ≤ λ/μ = {}",
                        poisson_intensity / claim_rate
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            LevyModel::CramerLundbergExp { .. } => "CramerLundbergExp",
            LevyModel::GammaRisk { .. } => "GammaRisk",
            LevyModel::StableRisk { .. } => "StableRisk",
            LevyModel::PerturbedClDemo { .. } => "PerturbedCLDemo",
        }
    }

    /// Short identifier with parameters, for output metadata.
    pub fn model_id(&self) -> String {
        match *self {
            LevyModel::CramerLundbergExp { poisson_intensity, claim_rate, safety_loading } => {
                format!("CramerLundbergExp(lambda={poisson_intensity},mu={claim_rate},theta={safety_loading})")
            }
            LevyModel::GammaRisk { gamma_shape, gamma_rate, safety_loading } => {
                format!("GammaRisk(alpha={gamma_shape},beta={gamma_rate},theta={safety_loading})")
            }
            LevyModel::StableRisk { stability, .. } => {
                format!("StableRisk(alpha={stability},beta={})", self.jump_scale())
            }
            LevyModel::PerturbedClDemo { drift, diffusion, poisson_intensity, claim_rate } => {
                format!("PerturbedCLDemo(c={drift},sigma={diffusion},lambda={poisson_intensity},mu={claim_rate})")
            }
        }
    }

    /// Linear drift c (premium rate). Zero for the stable model.
    pub fn premium_rate(&self) -> f64 {
        match *self {
            LevyModel::CramerLundbergExp { poisson_intensity, claim_rate, safety_loading } => {
                poisson_intensity * (1.0 + safety_loading) / claim_rate
            }
            LevyModel::GammaRisk { gamma_shape, gamma_rate, safety_loading } => {
                gamma_shape * (1.0 + safety_loading) / gamma_rate
            }
            LevyModel::StableRisk { .. } => 0.0,
            LevyModel::PerturbedClDemo { drift, .. } => drift,
        }
    }

    /// Gaussian coefficient σ.
    pub fn diffusion(&self) -> f64 {
        match *self {
            LevyModel::PerturbedClDemo { diffusion, .. } => diffusion,
            _ => 0.0,
        }
    }

    /// Paths of bounded variation: W(0) = 1/c > 0.
    pub fn bounded_variation(&self) -> bool {
        matches!(self, LevyModel::CramerLundbergExp { .. } | LevyModel::GammaRisk { .. })
    }

    /// W^(q)(0): 1/c for bounded variation, 0 otherwise.
    pub fn scale_at_zero(&self) -> f64 {
        if self.bounded_variation() {
            1.0 / self.premium_rate()
        } else {
            0.0
        }
    }

    /// Stable jump scale β (resolved default), 0 for other models.
    pub fn jump_scale(&self) -> f64 {
        match *self {
            LevyModel::StableRisk { stability, levy_scale } => {
                levy_scale.unwrap_or_else(|| canonical_stable_scale(stability))
            }
            _ => 0.0,
        }
    }

    /// κ in ψ(s) = κ s^α for the stable model, fixed by the jump scale:
    /// κ = βΓ(2−α)/(α(α−1)). Equals 1 for the default scale.
    pub fn stable_exponent_scale(&self) -> f64 {
        match *self {
            LevyModel::StableRisk { stability: a, levy_scale: Some(b) } => {
                b * gamma(2.0 - a) / (a * (a - 1.0))
            }
            _ => 1.0,
        }
    }

    /// ψ(s) for s ≥ 0.
    pub fn laplace_exponent(&self, s: f64) -> Result<f64> {
        if !(s >= 0.0) {
            return Err(Error::Domain { what: "Laplace exponent argument", value: s });
        }
        Ok(self.psi(s))
    }

    fn psi(&self, s: f64) -> f64 {
        if s == 0.0 {
            return 0.0;
        }
        match *self {
            LevyModel::CramerLundbergExp { poisson_intensity: l, claim_rate: mu, .. } => {
                self.premium_rate() * s - l * s / (mu + s)
            }
            LevyModel::GammaRisk { gamma_shape: a, gamma_rate: b, .. } => {
                self.premium_rate() * s - a * (s / b).ln_1p()
            }
            LevyModel::StableRisk { stability: a, .. } => self.stable_exponent_scale() * s.powf(a),
            LevyModel::PerturbedClDemo { drift, diffusion, poisson_intensity: l, claim_rate: mu } => {
                drift * s + 0.5 * diffusion * diffusion * s * s - l * s / (mu + s)
            }
        }
    }

    /// ψ continued analytically off the half line (principal branches).
    pub fn laplace_exponent_complex(&self, s: Complex64) -> Complex64 {
        match *self {
            LevyModel::CramerLundbergExp { poisson_intensity: l, claim_rate: mu, .. } => {
                s * self.premium_rate() - s * l / (s + mu)
            }
            LevyModel::GammaRisk { gamma_shape: a, gamma_rate: b, .. } => {
                s * self.premium_rate() - (s / b + 1.0).ln() * a
            }
            LevyModel::StableRisk { stability: a, .. } => s.powf(a) * self.stable_exponent_scale(),
            LevyModel::PerturbedClDemo { drift, diffusion, poisson_intensity: l, claim_rate: mu } => {
                s * drift + s * s * (0.5 * diffusion * diffusion) - s * l / (s + mu)
            }
        }
    }

    /// Φ(q) = sup{s ≥ 0 : ψ(s) = q}: bracket doubling then bisection.
    pub fn phi_inverse(&self, q: f64) -> Result<f64> {
        if !(q >= 0.0) || !q.is_finite() {
            return Err(Error::Domain { what: "phi_inverse argument", value: q });
        }
        if q == 0.0 {
            return Ok(0.0);
        }
        let mut lo = 0.0;
        let mut hi = 1.0;
        let mut doublings = 0;
        while self.psi(hi) <= q {
            lo = hi;
            hi *= 2.0;
            doublings += 1;
            if doublings > 1100 {
                return Err(Error::Convergence {
                    routine: "phi_inverse bracket",
                    detail: format!("ψ stays below q = {q}"),
                });
            }
        }
        for _ in 0..300 {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= 1e-12_f64.max(4.0 * f64::EPSILON * hi) || mid == lo || mid == hi {
                return Ok(mid);
            }
            if self.psi(mid) > q {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Err(Error::Convergence { routine: "phi_inverse bisection", detail: format!("q = {q}") })
    }

    /// Density of the jump (claim) measure at h > 0.
    pub fn levy_density(&self, h: f64) -> Result<f64> {
        if !(h > 0.0) {
            return Err(Error::Domain { what: "Lévy density argument", value: h });
        }
        Ok(match *self {
            LevyModel::CramerLundbergExp { poisson_intensity: l, claim_rate: mu, .. }
            | LevyModel::PerturbedClDemo { poisson_intensity: l, claim_rate: mu, .. } => l * mu * (-mu * h).exp(),
            LevyModel::GammaRisk { gamma_shape: a, gamma_rate: b, .. } => a * (-b * h).exp() / h,
            LevyModel::StableRisk { stability: a, .. } => self.jump_scale() * h.powf(-1.0 - a),
        })
    }

    /// Tail ν̄(h) = ν((h, ∞)) for h > 0.
    pub fn levy_tail(&self, h: f64) -> Result<f64> {
        if !(h > 0.0) {
            return Err(Error::Domain { what: "Lévy tail argument", value: h });
        }
        Ok(match *self {
            LevyModel::CramerLundbergExp { poisson_intensity: l, claim_rate: mu, .. }
            | LevyModel::PerturbedClDemo { poisson_intensity: l, claim_rate: mu, .. } => l * (-mu * h).exp(),
            LevyModel::GammaRisk { gamma_shape: a, gamma_rate: b, .. } => a * exp_integral_e1(b * h)?,
            LevyModel::StableRisk { stability: a, .. } => self.jump_scale() / (a * h.powf(a)),
        })
    }

    /// ∫₀^∞ e^{−γh} ν(z+h) dh for z > 0, γ ≥ 0. At γ = 0 this is ν̄(z).
    pub fn discounted_tail(&self, gamma_rate: f64, z: f64) -> Result<f64> {
        if !(z > 0.0) {
            return Err(Error::Domain { what: "discounted tail argument", value: z });
        }
        if !(gamma_rate >= 0.0) {
            return Err(Error::Domain { what: "discount rate", value: gamma_rate });
        }
        if gamma_rate == 0.0 {
            return self.levy_tail(z);
        }
        Ok(match *self {
            LevyModel::CramerLundbergExp { poisson_intensity: l, claim_rate: mu, .. }
            | LevyModel::PerturbedClDemo { poisson_intensity: l, claim_rate: mu, .. } => {
                l * mu * (-mu * z).exp() / (mu + gamma_rate)
            }
            LevyModel::GammaRisk { gamma_shape: a, gamma_rate: b, .. } => {
                // α e^{γz} E1((β+γ)z) written to avoid overflow
                a * (-b * z).exp() * exp_integral_e1_scaled((b + gamma_rate) * z)?
            }
            LevyModel::StableRisk { stability: a, .. } => {
                // h = z(1/t − 1) maps the half line onto (0, 1]
                let g = gamma_rate * z;
                let inner = tanh_sinh(
                    |t| {
                        let e = g * (1.0 / t - 1.0);
                        if e > 745.0 {
                            0.0
                        } else {
                            t.powf(a - 1.0) * (-e).exp()
                        }
                    },
                    0.0,
                    1.0,
                    1e-13,
                )?;
                self.jump_scale() * z.powf(-a) * inner
            }
        })
    }
}
