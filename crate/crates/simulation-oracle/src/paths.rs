use levy_core::LevyModel;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Gamma, Poisson, StandardNormal};

use crate::stable::StableIncrement;
use crate::{DepletionRecord, Error, Result};

/// Generator of replication `index`: ChaCha8 keyed by the seed, one stream
/// per replication, so the draws do not depend on scheduling.
pub fn replication_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn check_levels(x: f64, a: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Config(format!("drawdown level a must be positive, got {a}")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Config(format!("initial surplus x must be ≥ 0, got {x}")));
    }
    Ok(())
}

/// Cramér–Lundberg path from a sequence of (inter-arrival time, claim size)
/// pairs with premium rate `c`. Between claims the surplus rises linearly, so
/// the drawdown can only exceed `a` at a claim instant. Fails after `budget`
/// claims or when the sequence ends first.
pub fn simulate_cl_events<I>(c: f64, x: f64, a: f64, events: I, budget: u64) -> Result<DepletionRecord>
where
    I: IntoIterator<Item = (f64, f64)>,
{
    check_levels(x, a)?;
    let (mut t, mut level, mut max, mut min, mut gbar) = (0.0, x, x, x, 0.0);
    for (wait, claim) in events.into_iter().take(budget as usize) {
        t += wait;
        level += c * wait;
        if level >= max {
            // at the supremum just before the claim
            max = level;
            gbar = t;
        }
        let before = max - level;
        level -= claim;
        min = min.min(level);
        let y = max - level;
        if y > a {
            return Ok(DepletionRecord {
                tau_a: t,
                gbar,
                speed: t - gbar,
                max_level: max,
                min_level: min,
                predrawdown_record: before,
                overshoot: y - a,
                ruined_before: min < 0.0,
                continuous_crossing: false,
            });
        }
    }
    Err(Error::BudgetExhausted { budget })
}

/// Exact event-driven Cramér–Lundberg path.
pub fn simulate_cl_path<R: Rng>(model: &LevyModel, x: f64, a: f64, rng: &mut R, budget: u64) -> Result<DepletionRecord> {
    let LevyModel::CramerLundbergExp { poisson_intensity, claim_rate, .. } = *model else {
        return Err(Error::Config(format!("exact paths need a Cramér–Lundberg model, got {}", model.variant_name())));
    };
    model.validate()?;
    let waits = Exp::new(poisson_intensity).map_err(|e| Error::Config(e.to_string()))?;
    let claims = Exp::new(claim_rate).map_err(|e| Error::Config(e.to_string()))?;
    let events = std::iter::from_fn(|| {
        let w = waits.sample(rng);
        Some((w, claims.sample(rng)))
    });
    simulate_cl_events(model.premium_rate(), x, a, events, budget)
}

/// Exact one-step increments X_{t+dt} − X_t of a grid-simulated model.
#[derive(Debug, Clone)]
pub enum Increments {
    /// c·dt minus a Gamma(α·dt, β) subordinator increment.
    Gamma { drift: f64, jumps: Gamma<f64> },
    Stable(StableIncrement),
    /// c·dt + σ·√dt·N(0,1) minus a compound Poisson sum of Exp(μ) claims.
    Perturbed { drift: f64, sd: f64, count: Poisson<f64>, claim: Exp<f64> },
}

impl Increments {
    pub fn new(model: &LevyModel, dt: f64) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::Config(format!("grid step must be positive, got {dt}")));
        }
        model.validate()?;
        let bad = |e: String| Error::Config(e);
        match *model {
            LevyModel::GammaRisk { gamma_shape, gamma_rate, .. } => Ok(Increments::Gamma {
                drift: model.premium_rate() * dt,
                jumps: Gamma::new(gamma_shape * dt, 1.0 / gamma_rate).map_err(|e| bad(e.to_string()))?,
            }),
            LevyModel::StableRisk { stability, .. } => {
                Ok(Increments::Stable(StableIncrement::new(stability, model.stable_exponent_scale(), dt)))
            }
            LevyModel::PerturbedClDemo { drift, diffusion, poisson_intensity, claim_rate } => Ok(Increments::Perturbed {
                drift: drift * dt,
                sd: diffusion * dt.sqrt(),
                count: Poisson::new(poisson_intensity * dt).map_err(|e| bad(e.to_string()))?,
                claim: Exp::new(claim_rate).map_err(|e| bad(e.to_string()))?,
            }),
            LevyModel::CramerLundbergExp { .. } => {
                Err(Error::Config("Cramér–Lundberg paths are simulated exactly, not on a grid".into()))
            }
        }
    }

    /// One increment and whether it contains a jump.
    pub fn step<R: Rng>(&self, rng: &mut R) -> (f64, bool) {
        match self {
            Increments::Gamma { drift, jumps } => (drift - jumps.sample(rng), true),
            Increments::Stable(d) => (d.sample(rng), true),
            Increments::Perturbed { drift, sd, count, claim } => {
                let gauss: f64 = StandardNormal.sample(rng);
                let n = count.sample(rng) as u64;
                let total: f64 = (0..n).map(|_| claim.sample(rng)).sum();
                (drift + sd * gauss - total, n > 0)
            }
        }
    }
}

/// Grid path with step `dt`. Records are read at grid times: Ḡ is the last
/// grid time at a new maximum and Y_{τa−} the drawdown one step before the
/// crossing. A crossing step without jumps (perturbed model) is a creeping
/// crossing: the drawdown is stopped at exactly a.
pub fn simulate_grid_path<R: Rng>(
    model: &LevyModel,
    x: f64,
    a: f64,
    dt: f64,
    rng: &mut R,
    budget: u64,
) -> Result<DepletionRecord> {
    check_levels(x, a)?;
    let inc = Increments::new(model, dt)?;
    let (mut level, mut max, mut min, mut gbar) = (x, x, x, 0.0);
    for k in 1..=budget {
        let (step, jumped) = inc.step(rng);
        let t = k as f64 * dt;
        let before = max - level;
        level += step;
        if level >= max {
            max = level;
            gbar = t;
            continue;
        }
        if max - level > a {
            let creeping = !jumped;
            if creeping {
                level = max - a;
            }
            min = min.min(level);
            return Ok(DepletionRecord {
                tau_a: t,
                gbar,
                speed: t - gbar,
                max_level: max,
                min_level: min,
                predrawdown_record: if creeping { a } else { before },
                overshoot: if creeping { 0.0 } else { max - level - a },
                ruined_before: min < 0.0,
                continuous_crossing: creeping,
            });
        }
        min = min.min(level);
    }
    Err(Error::BudgetExhausted { budget })
}

/// Exact path for Cramér–Lundberg, grid path with step `dt` otherwise.
pub fn simulate_path<R: Rng>(model: &LevyModel, x: f64, a: f64, dt: f64, rng: &mut R, budget: u64) -> Result<DepletionRecord> {
    match model {
        LevyModel::CramerLundbergExp { .. } => simulate_cl_path(model, x, a, rng, budget),
        _ => simulate_grid_path(model, x, a, dt, rng, budget),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_large_claim_crosses_at_once() {
        let r = simulate_cl_events(1.5, 0.0, 1.0, [(0.7, 2.5)], 10).unwrap();
        assert_eq!(r.tau_a, 0.7);
        assert_eq!(r.gbar, 0.7);
        assert_eq!(r.speed, 0.0);
        assert!((r.max_level - 1.5 * 0.7).abs() < 1e-15);
        assert_eq!(r.predrawdown_record, 0.0);
        assert!((r.overshoot - 1.5).abs() < 1e-15);
        assert!(r.ruined_before && !r.continuous_crossing);
    }

    #[test]
    fn excursion_ends_at_last_supremum() {
        // c = 1: claim 0.6 at t=1, recovers by t=1.6, claim 0.5 at t=2, claim 0.9 at t=2.3
        let r = simulate_cl_events(1.0, 2.0, 1.0, [(1.0, 0.6), (1.0, 0.5), (0.3, 0.9)], 10).unwrap();
        assert_eq!(r.gbar, 2.0);
        assert!((r.tau_a - 2.3).abs() < 1e-15);
        assert!((r.predrawdown_record - 0.2).abs() < 1e-12);
        assert!((r.overshoot - 0.1).abs() < 1e-12);
        assert!((r.max_level - 3.4).abs() < 1e-12);
    }

    #[test]
    fn budget_is_enforced() {
        let r = simulate_cl_events(1.0, 0.0, 1.0, std::iter::repeat((1.0, 0.1)), 100);
        assert_eq!(r, Err(Error::BudgetExhausted { budget: 100 }));
    }
}
