//! Exact-arithmetic kernels for nonintersecting stay/step-right walkers.
//!
//! The crate computes, entirely over arbitrary-precision integers and
//! rationals:
//!
//! - the binomial matrix `[C(A, B_j - i)]`, its closed-form inverse, and the
//!   determinant/minor formulas that accompany it ([`binomial_matrix`]);
//! - counting, exhaustive enumeration and exact uniform sampling of walker
//!   configurations, including the half-hexagon specialization
//!   ([`ensemble`]);
//! - the correlation kernel of the walker process and k-point correlation
//!   determinants, in three independently transcribed forms ([`kernel`]);
//! - path and lozenge renderings of configurations ([`render`]);
//! - replayable verification sweeps cross-checking every formula against
//!   brute-force oracles ([`verify`]).
//!
//! With the default `parallel` feature the sweep and grid entry points run
//! data-parallel under rayon; disabling it falls back to identical
//! sequential code paths.

pub mod binomial_matrix;
pub mod ensemble;
pub mod error;
pub mod exact;
pub mod kernel;
pub mod matrix;
mod par;
pub mod render;
pub mod verify;

pub use binomial_matrix::{
    lagrange_sides, reduced_minor, shifted_binomial_det, BinomialMatrixSpec,
};
pub use ensemble::{Configuration, EnsembleSpec, SpaceTimePoint};
pub use error::{Error, Result};
pub use exact::{binom, binomial, factorial, vandermonde};
pub use kernel::{general_kernel, half_hexagon_kernel, KernelContext};
pub use matrix::ExactMatrix;
