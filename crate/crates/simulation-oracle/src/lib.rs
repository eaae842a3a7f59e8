//! Monte Carlo simulation of the drawdown of spectrally negative Lévy risk
//! processes up to the first time it exceeds a level a.
//!
//! Cramér–Lundberg paths are simulated exactly, event by event. Gamma,
//! stable and perturbed models are simulated on a time grid with exact
//! increments; their suprema carry an O(Δt^{1/α}) discretization bias.

mod error;
mod experiment;
mod paths;
mod record;
mod stable;
mod stats;

pub use error::{Error, Result};
pub use experiment::{
    run_experiment, Experiment, Histogram, SimConfig, Summary, TransformEstimate, DEFAULT_BUDGET,
    DEFAULT_GRID_STEP, DEFAULT_REPLICATIONS,
};
pub use paths::{replication_rng, simulate_cl_events, simulate_cl_path, simulate_grid_path, simulate_path, Increments};
pub use record::{DepletionRecord, Estimate};
pub use stable::StableIncrement;
pub use stats::{estimate, estimate_transform, ks_distance, ks_two_sample, kolmogorov_survival};
