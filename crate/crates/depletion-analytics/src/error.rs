use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} outside its domain: {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("no-ruin probability {probability:e} is below the conditioning floor 1e-12")]
    Conditioning { probability: f64 },

    #[error(transparent)]
    Scale(#[from] scale_kernel::Error),

    #[error(transparent)]
    Model(#[from] levy_core::Error),

    #[error(transparent)]
    Numeric(#[from] special_functions::Error),
}

impl Error {
    /// True for requests the models cannot serve, as opposed to numerical
    /// breakdowns.
    pub fn is_unsupported(&self) -> bool {
        matches!(self, Error::Unsupported(_) | Error::Scale(scale_kernel::Error::Unsupported(_)))
    }
}
