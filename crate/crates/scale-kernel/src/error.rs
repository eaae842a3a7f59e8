use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{what} outside its domain: {value}")]
    Domain { what: &'static str, value: f64 },

    #[error(transparent)]
    Model(#[from] levy_core::Error),

    #[error(transparent)]
    Numeric(#[from] special_functions::Error),
}
