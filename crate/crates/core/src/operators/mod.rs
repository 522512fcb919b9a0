//! Three realizations of the weighted Prandtl operator
//! `K u = -(1 - x²) (1/2π) PV∫ u'(t)/(t - x) dt`:
//!
//! - [`multiplier`]: the spectral symbol `ξ coth(πξ)` applied through the
//!   discrete transform (the production path);
//! - [`pv`]: direct principal-value quadrature, used as an oracle;
//! - [`glauert`]: the sine-series eigen-relation `sin nθ ↦ n sin nθ/(2 sin θ)`.

pub mod glauert;
pub mod multiplier;
pub mod pv;

pub use glauert::{glauert_apply, GlauertExpansion};
pub use multiplier::{apply_prandtl_spectral, multiplier, MultiplierTable};
pub use pv::{apply_prandtl_pv, verify_coth_image};
