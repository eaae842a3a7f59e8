//! Spectrally negative Lévy risk models: Laplace exponent ψ, Lévy density
//! and tail, and the right inverse Φ.
//!
//! Four models are supported: Cramér–Lundberg with exponential claims, the
//! gamma risk process, the spectrally negative α-stable process and a
//! Brownian-perturbed Cramér–Lundberg process used by the simulator.

mod error;
mod model;

pub use error::{Error, Result};
pub use model::{canonical_stable_scale, LevyModel, ModelSpec};
