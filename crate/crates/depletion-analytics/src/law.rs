//! Probability laws of the depletion quantities.

use serde::Serialize;

use scale_kernel::{Atom, MixedMeasure};
use special_functions::GridFunction;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    /// Y_{τa−}, the drawdown just before the critical one.
    PredrawdownRecord,
    /// Y_{τa} − a.
    Overshoot,
    /// X̄_{τa}, the running maximum at τ_a.
    MaxLevel,
}

impl Quantity {
    pub fn name(&self) -> &'static str {
        match self {
            Quantity::PredrawdownRecord => "predrawdown-record",
            Quantity::Overshoot => "overshoot",
            Quantity::MaxLevel => "max-level",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conditioning {
    Unconditional,
    /// On {X̲_{τa} ≥ 0}.
    NoRuin,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AtomRecord {
    pub location: f64,
    pub weight: f64,
}

#[derive(Debug, Clone)]
pub struct DepletionLaw {
    pub quantity: Quantity,
    pub conditioning: Conditioning,
    pub a: f64,
    pub x: f64,
    pub model_id: String,
    law: MixedMeasure,
}

impl DepletionLaw {
    pub(crate) fn new(
        quantity: Quantity,
        conditioning: Conditioning,
        a: f64,
        x: f64,
        model_id: String,
        law: MixedMeasure,
    ) -> Self {
        let atoms: Vec<Atom> = law.atoms().iter().copied().filter(|a| a.weight != 0.0).collect();
        let law = if atoms.len() == law.atoms().len() { law } else { rebuild(&law, atoms) };
        Self { quantity, conditioning, a, x, model_id, law }
    }

    pub fn measure(&self) -> &MixedMeasure {
        &self.law
    }

    pub fn atoms(&self) -> Vec<AtomRecord> {
        self.law.atoms().iter().map(|a| AtomRecord { location: a.location, weight: a.weight }).collect()
    }

    pub fn density(&self, y: f64) -> f64 {
        self.law.density(y)
    }

    pub fn lower(&self) -> f64 {
        self.law.lower()
    }

    pub fn total_mass(&self) -> Result<f64> {
        Ok(self.law.total_mass()?)
    }

    pub fn mean(&self) -> Result<f64> {
        Ok(self.law.mean()?)
    }

    /// P(quantity ≤ y).
    pub fn cdf(&self, y: f64) -> Result<f64> {
        Ok(self.law.cdf(y)?)
    }

    /// Smallest y with cdf(y) ≥ p, by bracketing and bisection.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain { what: "quantile level", value: p });
        }
        let lo0 = self.law.lower();
        if self.cdf(lo0)? >= p {
            return Ok(lo0);
        }
        let mut hi = if self.law.upper().is_finite() { self.law.upper() } else { lo0 + 1.0 };
        let mut lo = lo0;
        let mut grow = 0;
        while self.cdf(hi)? < p {
            if self.law.upper().is_finite() {
                // mass below 1 within quadrature error: the quantile is the top
                return Ok(hi);
            }
            lo = hi;
            hi = lo0 + 2.0 * (hi - lo0);
            grow += 1;
            if grow > 200 {
                return Err(Error::Domain { what: "quantile level beyond the law's mass", value: p });
            }
        }
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= 1e-10 * (1.0 + hi.abs()) {
                break;
            }
            if self.cdf(mid)? >= p {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }

    /// Upper end of the plotting range: the support's end, or the 0.999
    /// quantile for unbounded laws.
    pub fn plot_upper(&self) -> Result<f64> {
        if self.law.upper().is_finite() {
            Ok(self.law.upper())
        } else {
            self.quantile(0.999)
        }
    }

    /// Density on `points` + 1 equally spaced nodes of [lower, plot_upper].
    pub fn materialize(&self, points: usize) -> Result<GridFunction> {
        if points == 0 {
            return Err(Error::Domain { what: "grid points", value: 0.0 });
        }
        let hi = self.plot_upper()?;
        Ok(self.law.sample_density(hi, points)?)
    }
}

fn rebuild(law: &MixedMeasure, atoms: Vec<Atom>) -> MixedMeasure {
    let m = match law.tail() {
        Some(t) if !law.upper().is_finite() => MixedMeasure::semi_infinite(atoms, law.density_fn(), law.lower(), t),
        _ => MixedMeasure::finite(atoms, law.density_fn(), law.lower(), law.upper()),
    };
    m.with_tolerance(law.tolerance()).with_breaks(law.breaks())
}
