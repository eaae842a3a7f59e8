//! Numeric kernels shared by the scale-function and depletion code: the
//! exponential integral, Mittag-Leffler series, uniform-grid convolution,
//! quadrature on finite and half-infinite ranges and fixed-Talbot Laplace
//! inversion.

mod error;
pub mod expint;
pub mod grid;
pub mod mittag_leffler;
pub mod quadrature;
pub mod talbot;

pub use error::{Error, Result};
pub use expint::{exp_integral_e1, exp_integral_e1_scaled};
pub use grid::{convolve, GridFunction};
pub use mittag_leffler::{mittag_leffler, mittag_leffler_complex, mittag_leffler_complex_bounded};
pub use quadrature::{quad_finite, quad_semi_infinite, tanh_sinh, tanh_sinh_gaps, tanh_sinh_gaps_rel, Tail, DEFAULT_TOL};
pub use talbot::{invert_laplace, invert_laplace_bounded, invert_laplace_nodes, TALBOT_NODES};

pub use num_complex::Complex64;
