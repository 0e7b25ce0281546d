//! Phase-space Bell tests with pairs of two-level atoms.
//!
//! The crate is split in three layers:
//!
//! * [`su2`]: spin-j rotations, coherent states, Q functions and the
//!   two-atom state algebra (displacement, reduced densities, Schmidt form).
//! * [`bell`]: the Clauser-Horne combination Γ built from joint Q values,
//!   the `u`, `v` and `η` entangled families, deterministic local strategies
//!   and a derivative-free search for extremal Γ.
//! * [`ramsey`]: the Ramsey pulse-to-rotation mapping and a finite-shot
//!   Monte Carlo of population readout with Γ estimation.
//!
//! Angles are radians throughout. Basis order is m descending, so the upper
//! level `|+⟩` is index 0 and the two-atom order is `(++, +−, −+, −−)`.

pub mod bell;
pub mod error;
pub mod ramsey;
pub mod su2;

pub use error::{Error, Result};

/// Tolerance for exact linear-algebra identities.
pub const EXACT_TOL: f64 = 1e-12;
/// Tolerance for comparisons between matrix functions computed by different routes.
pub const MATRIX_TOL: f64 = 1e-10;
