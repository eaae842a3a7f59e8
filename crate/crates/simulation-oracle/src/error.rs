use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid simulation config: {0}")]
    Config(String),

    #[error("path did not reach the critical drawdown within {budget} steps")]
    BudgetExhausted { budget: u64 },

    #[error("{aborted} of {replications} paths aborted (limit 0.1%)")]
    TooManyAborts { aborted: usize, replications: usize },

    #[error(transparent)]
    Model(#[from] levy_core::Error),
}
