use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid model: {0}")]
    Validation(String),

    #[error("{what} outside its domain: {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("{routine} did not converge: {detail}")]
    Convergence { routine: &'static str, detail: String },

    #[error(transparent)]
    Numeric(#[from] special_functions::Error),
}
