use std::fmt;

/// A failed command with its exit code.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1: Monte Carlo and analytics disagree.
    Disagreement(String),
    /// Exit 2: bad arguments, model, config or request outside the models' scope.
    Usage(String),
    /// Exit 3: a numerical routine failed.
    Numerical { kernel: String, detail: String },
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Disagreement(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Numerical { .. } => 3,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Failure::Usage(msg.into())
    }

    /// Classifies an analytics error raised while computing `kernel`.
    pub fn analytics(kernel: &str, e: depletion_analytics::Error) -> Self {
        use depletion_analytics::Error as E;
        let validation = match &e {
            E::Domain { .. } | E::Unsupported(_) | E::Conditioning { .. } => true,
            E::Scale(s) => scale_validation(s),
            E::Model(m) => model_validation(m),
            E::Numeric(n) => numeric_validation(n),
        };
        if validation {
            Failure::Usage(format!("{kernel}: {e}"))
        } else {
            Failure::Numerical { kernel: kernel.to_string(), detail: e.to_string() }
        }
    }

    pub fn simulation(e: simulation_oracle::Error) -> Self {
        use simulation_oracle::Error as E;
        match e {
            E::Config(_) | E::Model(_) => Failure::Usage(e.to_string()),
            E::BudgetExhausted { .. } | E::TooManyAborts { .. } => {
                Failure::Numerical { kernel: "run_experiment".into(), detail: e.to_string() }
            }
        }
    }

    pub fn io(what: &str, e: impl fmt::Display) -> Self {
        Failure::Usage(format!("{what}: {e}"))
    }
}

fn scale_validation(e: &scale_kernel::Error) -> bool {
    match e {
        scale_kernel::Error::Unsupported(_) | scale_kernel::Error::Domain { .. } => true,
        scale_kernel::Error::Model(m) => model_validation(m),
        scale_kernel::Error::Numeric(n) => numeric_validation(n),
    }
}

fn model_validation(e: &levy_core::Error) -> bool {
    match e {
        levy_core::Error::Validation(_) | levy_core::Error::Domain { .. } => true,
        levy_core::Error::Convergence { .. } => false,
        levy_core::Error::Numeric(n) => numeric_validation(n),
    }
}

fn numeric_validation(e: &special_functions::Error) -> bool {
    matches!(e, special_functions::Error::Domain { .. })
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Disagreement(m) => write!(f, "comparison failed: {m}"),
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Numerical { kernel, detail } => write!(f, "numerical failure in {kernel}: {detail}"),
        }
    }
}

impl std::error::Error for Failure {}
