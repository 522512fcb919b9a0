//! Spectral solver and weighted function-space toolkit for the Prandtl
//! singular integro-differential equation
//!
//! ```text
//! V(x) u(x) - (1/2π) PV∫ u'(t)/(t - x) dt = f(x),   u(±1) = 0,   -1 < x < 1,
//! ```
//!
//! with a coefficient satisfying `V ≥ 0` and `(1 - x²) V(x) ≤ M`.
//!
//! The workhorse is the interval transform
//! `U(ξ) = ∫ u(y) ((1-y)/(1+y))^{iξ} dy/(1-y²)`, which under `x = tanh ω`
//! becomes a Fourier transform in `ω` and turns the weighted singular
//! operator into multiplication by `ξ coth(πξ)`. Everything here is discrete:
//! functions live on a uniform `ω`-grid, transforms are DFTs, and the solver is
//! preconditioned conjugate gradients on a positive-definite system.
//!
//! Module map:
//! - [`grid`]: the tanh grid, its spectral dual, sampled functions.
//! - [`ptransform`]: forward/inverse transform, pairing, derivative image,
//!   convolutions.
//! - [`spaces`]: the weighted norms and the embedding constant.
//! - [`operators`]: the multiplier, a principal-value quadrature oracle and a
//!   Glauert sine-series oracle.
//! - [`solver`]: coefficient/right-hand-side presets, the CG solve, the
//!   Glauert collocation oracle, and the bound ledger.
//! - [`verify`]: the self-verification suite used by `prandtl verify` and the
//!   acceptance tests.

// `!(a < b)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod grid;
pub mod operators;
pub mod ptransform;
mod quadrature;
pub mod solver;
pub mod spaces;
pub mod verify;

pub use error::{Error, Result};
pub use grid::{omega_of_x, sample, sample_omega, x_of_omega, GridFunction, OmegaGrid, SpectralFunction, SpectralGrid};
pub use num_complex::Complex64;
