use serde::{Deserialize, Serialize};

/// Depletion quantities of one path, observed at τ_a.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DepletionRecord {
    /// First time the drawdown exceeds a.
    pub tau_a: f64,
    /// Last time before τ_a the surplus was at its running maximum.
    pub gbar: f64,
    /// tau_a − gbar.
    pub speed: f64,
    /// Running maximum at τ_a.
    pub max_level: f64,
    /// Running minimum at τ_a, including the crossing value.
    pub min_level: f64,
    /// Drawdown just before τ_a.
    pub predrawdown_record: f64,
    /// Drawdown at τ_a minus a.
    pub overshoot: f64,
    /// The surplus went below 0 by τ_a.
    pub ruined_before: bool,
    /// The drawdown reached a without a jump.
    pub continuous_crossing: bool,
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    pub n: usize,
}

impl Estimate {
    /// Number of standard errors between the estimate and `target`;
    /// infinite when they differ with a zero standard error.
    pub fn z_score(&self, target: f64) -> f64 {
        let diff = self.mean - target;
        if diff == 0.0 {
            0.0
        } else {
            diff / self.std_error
        }
    }
}
