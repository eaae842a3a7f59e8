use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} outside its domain: {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("{routine} did not converge: {detail}")]
    Convergence { routine: &'static str, detail: String },

    #[error("quadrature tolerance not met ({detail})")]
    Quadrature { detail: String },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("transform evaluation failed at s = {re}{im:+}i: {detail}")]
    Transform { re: f64, im: f64, detail: String },
}
