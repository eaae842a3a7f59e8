use levy_core::{LevyModel, ModelSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::paths::{replication_rng, simulate_path, Increments};
use crate::stats::{estimate, estimate_transform};
use crate::{DepletionRecord, Error, Estimate, Result};

pub const DEFAULT_GRID_STEP: f64 = 1e-3;
pub const DEFAULT_REPLICATIONS: usize = 100_000;
/// Claims (exact paths) or steps (grid paths) before a path is aborted.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub replications: usize,
    pub seed: u64,
    /// Time step of grid models; unused for Cramér–Lundberg.
    pub grid_step: f64,
    pub a: f64,
    pub model: ModelSpec,
    pub budget: u64,
    /// (q, r) pairs for the empirical E[e^{−qτa − rḠ}].
    pub transform_grid: Vec<(f64, f64)>,
    pub histogram_bins: usize,
}

impl SimConfig {
    pub fn new(model: ModelSpec, a: f64) -> Self {
        SimConfig {
            replications: DEFAULT_REPLICATIONS,
            seed: 0,
            grid_step: DEFAULT_GRID_STEP,
            a,
            model,
            budget: DEFAULT_BUDGET,
            transform_grid: vec![(0.0, 0.0), (0.25, 0.0), (0.5, 0.0), (0.5, 0.25), (1.0, 0.5), (1.0, 1.0)],
            histogram_bins: 50,
        }
    }

    pub fn with_replications(mut self, n: usize) -> Self {
        self.replications = n;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_grid_step(mut self, dt: f64) -> Self {
        self.grid_step = dt;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::Config("replications must be at least 1".into()));
        }
        if self.histogram_bins == 0 {
            return Err(Error::Config("histogram_bins must be at least 1".into()));
        }
        if !(self.a > 0.0) || !self.a.is_finite() {
            return Err(Error::Config(format!("drawdown level a must be positive, got {}", self.a)));
        }
        self.model.clone().validate()?;
        for &(q, r) in &self.transform_grid {
            if !(q >= 0.0 && q + r >= 0.0) {
                return Err(Error::Config(format!("transform point needs q ≥ 0 and q + r ≥ 0, got ({q}, {r})")));
            }
        }
        if !self.exact() {
            Increments::new(&self.model.model, self.grid_step)?;
        }
        Ok(())
    }

    fn exact(&self) -> bool {
        matches!(self.model.model, LevyModel::CramerLundbergExp { .. })
    }
}

/// Histogram density: `density[i]` on [edges[i], edges[i+1]), normalized by
/// the total sample count of the experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub density: Vec<f64>,
}

impl Histogram {
    fn build(samples: &[f64], hi: f64, bins: usize, total: usize) -> Self {
        let hi = if hi > 0.0 { hi } else { 1.0 };
        let width = hi / bins as f64;
        let mut counts = vec![0usize; bins];
        for &v in samples {
            counts[((v / width) as usize).min(bins - 1)] += 1;
        }
        Histogram {
            edges: (0..=bins).map(|i| i as f64 * width).collect(),
            density: counts.iter().map(|&c| c as f64 / (total as f64 * width)).collect(),
        }
    }

    /// Total probability carried by the bins.
    pub fn mass(&self) -> f64 {
        self.density.iter().zip(self.edges.windows(2)).map(|(d, e)| d * (e[1] - e[0])).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformEstimate {
    pub q: f64,
    pub r: f64,
    pub estimate: Estimate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub model_id: String,
    pub x: f64,
    pub a: f64,
    pub seed: u64,
    pub replications: usize,
    pub completed: usize,
    pub aborted: usize,
    /// None for exact (Cramér–Lundberg) paths.
    pub grid_step: Option<f64>,
    pub tau_a: Estimate,
    pub gbar: Estimate,
    pub speed: Estimate,
    pub max_level: Estimate,
    pub min_level: Estimate,
    pub predrawdown_record: Estimate,
    pub overshoot: Estimate,
    pub ruin_probability: Estimate,
    /// Frequency of Y_{τa−} = 0 (below c·Δt on a grid).
    pub predrawdown_zero_atom: Estimate,
    pub continuous_crossings: usize,
    pub overshoot_histogram: Histogram,
    /// Non-atomic part of the Y_{τa−} law on [0, a].
    pub predrawdown_histogram: Histogram,
    pub transforms: Vec<TransformEstimate>,
}

#[derive(Debug, Clone)]
pub struct Experiment {
    /// Completed paths in replication order.
    pub records: Vec<DepletionRecord>,
    pub summary: Summary,
}

/// Runs the replications in parallel, replication i drawing from stream
/// (seed, i), and summarizes them in replication order.
pub fn run_experiment(config: &SimConfig) -> Result<Experiment> {
    config.validate()?;
    let model = &config.model.model;
    let (x, a, dt) = (config.model.x, config.a, config.grid_step);
    let outcomes: Vec<Result<DepletionRecord>> = (0..config.replications as u64)
        .into_par_iter()
        .map(|i| simulate_path(model, x, a, dt, &mut replication_rng(config.seed, i), config.budget))
        .collect();
    let mut records = Vec::with_capacity(outcomes.len());
    let mut aborted = 0;
    for o in outcomes {
        match o {
            Ok(r) => records.push(r),
            Err(Error::BudgetExhausted { .. }) => aborted += 1,
            Err(e) => return Err(e),
        }
    }
    if aborted * 1000 > config.replications || records.is_empty() {
        return Err(Error::TooManyAborts { aborted, replications: config.replications });
    }
    let summary = summarize(config, &records, aborted);
    Ok(Experiment { records, summary })
}

fn summarize(config: &SimConfig, records: &[DepletionRecord], aborted: usize) -> Summary {
    let exact = config.exact();
    let a = config.a;
    let zero_below = if exact { 0.0 } else { config.grid_step * config.model.model.premium_rate() };
    let is_zero = |r: &DepletionRecord| if exact { r.predrawdown_record == 0.0 } else { r.predrawdown_record < zero_below };
    let field = |f: fn(&DepletionRecord) -> f64| estimate(records.iter().map(f)).expect("records are non-empty");
    let flag = |f: &dyn Fn(&DepletionRecord) -> bool| {
        estimate(records.iter().map(|r| if f(r) { 1.0 } else { 0.0 })).expect("records are non-empty")
    };
    let n = records.len();
    let bins = config.histogram_bins;
    let overshoots: Vec<f64> = records.iter().map(|r| r.overshoot).collect();
    let top = overshoots.iter().cloned().fold(0.0, f64::max);
    let continuous: Vec<f64> = records
        .iter()
        .filter(|r| !is_zero(r) && !r.continuous_crossing)
        .map(|r| r.predrawdown_record)
        .collect();
    Summary {
        model_id: config.model.model.model_id(),
        x: config.model.x,
        a,
        seed: config.seed,
        replications: config.replications,
        completed: n,
        aborted,
        grid_step: if exact { None } else { Some(config.grid_step) },
        tau_a: field(|r| r.tau_a),
        gbar: field(|r| r.gbar),
        speed: field(|r| r.speed),
        max_level: field(|r| r.max_level),
        min_level: field(|r| r.min_level),
        predrawdown_record: field(|r| r.predrawdown_record),
        overshoot: field(|r| r.overshoot),
        ruin_probability: flag(&|r| r.ruined_before),
        predrawdown_zero_atom: flag(&is_zero),
        continuous_crossings: records.iter().filter(|r| r.continuous_crossing).count(),
        overshoot_histogram: Histogram::build(&overshoots, top, bins, n),
        predrawdown_histogram: Histogram::build(&continuous, a, bins, n),
        transforms: config
            .transform_grid
            .iter()
            .map(|&(q, r)| TransformEstimate { q, r, estimate: estimate_transform(records, q, r).expect("non-empty") })
            .collect(),
    }
}
