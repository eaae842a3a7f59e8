//! q-scale functions W^(q) of spectrally negative Lévy processes and the
//! objects built from them: λ(a,q) = W′/W, the excursion kernel F, the
//! killed resolvent R_a^(q) and the continuous-crossing coefficient Δ^(q).
//!
//! Cramér–Lundberg and stable contexts use closed forms; the gamma process
//! uses a renewal series on a uniform grid; anything else (and any
//! cross-check) uses fixed-Talbot inversion of 1/(ψ(s) − q).

mod context;
mod error;
mod gamma;
mod measure;

pub use context::{excursion_kernel, ScaleContext, ScaleMethod, ScaleOptions};
pub use error::{Error, Result};
pub use gamma::{ladder_cdf, ladder_density, GammaSeries};
pub use measure::{Atom, DensityFn, MixedMeasure};
