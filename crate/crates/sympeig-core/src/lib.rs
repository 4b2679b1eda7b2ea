//! Symplectic eigenvalues and Williamson diagonal forms of symmetric
//! positive-semidefinite matrices.
//!
//! A `2n × 2n` symmetric positive-definite matrix `A` can always be brought
//! to the diagonal form `SᵀAS = diag(D, D)` by a symplectic matrix `S`; the
//! diagonal entries of `D` are the symplectic eigenvalues of `A`. This crate
//! extends the construction to positive-*semidefinite* matrices, where the
//! form exists exactly when `ker A` is a symplectic subspace, and provides
//! two independent cross-checks:
//!
//! * a 4n-dimensional matrix-pencil eigenvalue problem whose spectrum is
//!   `{±dⱼ}` with doubled multiplicities ([`pencil`]), and
//! * a randomized verifier for the trace minimization identity
//!   `min tr(XᵀAX) = 2·Σ dⱼ` over rectangular symplectic `X` ([`tracemin`]).
//!
//! The crate is `no_std` (with `alloc`); everything operates on the dense
//! row-major [`DenseMatrix`] carrier. File formats and the command-line
//! frontend live in the companion `sympeig` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod eigen;
pub mod matrix;
pub mod pencil;
pub mod symplectic;
pub mod tracemin;
pub mod williamson;

pub use error::{Error, Result};
pub use matrix::DenseMatrix;

/// Default relative tolerance used by the operations when callers have no
/// better value: `1e-10`.
pub const DEFAULT_TOL: f64 = 1e-10;
