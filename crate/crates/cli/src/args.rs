use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "drawdown-kit", version, about = "Drawdown depletion analytics and Monte Carlo for Lévy risk models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Evaluate a quantity analytically and write CSV + JSON.
    Analyze(AnalyzeArgs),
    /// Simulate paths and write the records and a summary.
    Simulate(SimulateArgs),
    /// Compare analytic values with Monte Carlo estimates.
    Compare(CompareArgs),
    /// Repeat the run recorded in a manifest.
    Rerun(RerunArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze(_) => "analyze",
            Command::Simulate(_) => "simulate",
            Command::Compare(_) => "compare",
            Command::Rerun(_) => "rerun",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ModelArgs {
    /// Model JSON: {"variant": ..., "params": {...}, "x": ...}.
    #[arg(long)]
    pub model: PathBuf,
    /// Critical drawdown level.
    #[arg(long)]
    pub a: f64,
    /// Initial surplus; overrides the model file's x.
    #[arg(long)]
    pub x: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    RuinBefore,
    LawPredrawdown,
    LawOvershoot,
    LawMax,
    LtBivariate,
    LtSpeed,
    LtGbar,
    CdfTau,
    CdfSpeed,
    ConditionalLaws,
}

impl Quantity {
    pub fn name(&self) -> &'static str {
        match self {
            Quantity::RuinBefore => "ruin-before",
            Quantity::LawPredrawdown => "law-predrawdown",
            Quantity::LawOvershoot => "law-overshoot",
            Quantity::LawMax => "law-max",
            Quantity::LtBivariate => "lt-bivariate",
            Quantity::LtSpeed => "lt-speed",
            Quantity::LtGbar => "lt-gbar",
            Quantity::CdfTau => "cdf-tau",
            Quantity::CdfSpeed => "cdf-speed",
            Quantity::ConditionalLaws => "conditional-laws",
        }
    }

    /// Analytics routine reported when the quantity fails numerically.
    pub fn kernel(&self) -> &'static str {
        match self {
            Quantity::RuinBefore => "prob_ruin_before_drawdown",
            Quantity::LawPredrawdown => "law_predrawdown_record",
            Quantity::LawOvershoot => "law_overshoot",
            Quantity::LawMax => "law_max_level",
            Quantity::LtBivariate => "bivariate_laplace",
            Quantity::LtSpeed => "laplace_speed",
            Quantity::LtGbar => "laplace_gbar",
            Quantity::CdfTau => "tau_cdf",
            Quantity::CdfSpeed => "speed_cdf",
            Quantity::ConditionalLaws => "conditional_laws",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum)]
    pub quantity: Quantity,
    /// Discount rate of τ_a (transforms); a default grid when omitted.
    #[arg(long)]
    pub q: Option<f64>,
    /// Discount rate of Ḡ (transforms); a default grid when omitted.
    #[arg(long)]
    pub r: Option<f64>,
    /// Output directory.
    #[arg(long, default_value = "drawdown-out")]
    pub out: PathBuf,
    /// Quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Grid intervals of tabulated densities and CDFs.
    #[arg(long, default_value_t = 512)]
    pub points: usize,
    /// Probability left beyond the right end of a density grid
    /// [default: 1e-9 for exponential tails, 1e-3 for power tails].
    #[arg(long)]
    pub tail_mass: Option<f64>,
    /// Right end of CDF grids [default: where the CDF reaches 0.999].
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Let the gamma model use numerical inversion for q > 0 (experimental).
    #[arg(long)]
    pub gamma_inversion: bool,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SimArgs {
    /// Number of simulated paths.
    #[arg(long, default_value_t = 100_000)]
    pub paths: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Time step of grid-simulated models.
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    /// Claims or grid steps after which a path is aborted.
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub sim: SimArgs,
    #[arg(long, default_value = "drawdown-out")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CompareArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum)]
    pub quantity: Quantity,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub r: Option<f64>,
    #[command(flatten)]
    pub sim: SimArgs,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Largest accepted |z| of a Monte Carlo row.
    #[arg(long, default_value_t = 4.0)]
    pub z_limit: f64,
    /// Also write the table and a manifest here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Simulate with this safety loading instead of the model's (harness check).
    #[arg(long, hide = true)]
    pub sim_loading: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct RerunArgs {
    /// manifest.json written by an earlier run.
    pub manifest: PathBuf,
    /// Output directory [default: the recorded one].
    #[arg(long)]
    pub out: Option<PathBuf>,
}
