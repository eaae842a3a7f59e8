//! Ruin before a drawdown of size a, the laws of the pre-drawdown record,
//! overshoot and running maximum at the drawdown time, and Laplace
//! transforms of the drawdown time, the last maximum time and the speed of
//! depletion.

mod analytics;
mod cdf;
mod error;
mod law;

pub use analytics::{ConditionalLaws, Depletion, DepletionOptions, Route, CONDITIONING_FLOOR};
pub use cdf::{cdf_from_transform, CdfCurve, CdfKind};
pub use error::{Error, Result};
pub use law::{AtomRecord, Conditioning, DepletionLaw, Quantity};
