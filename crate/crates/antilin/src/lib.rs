//! Algebra of anti-linear (conjugate-linear) operators on finite-dimensional
//! complex Hilbert spaces.
//!
//! An anti-linear operator ϑ satisfies ϑ(c₁φ₁ + c₂φ₂) = c₁*ϑφ₁ + c₂*ϑφ₂ and is
//! represented here by a complex matrix `M` acting as φ ↦ M·conj(φ). In this
//! representation the Wigner adjoint ϑ† (defined by ⟨φ₁, ϑ†φ₂⟩ = ⟨φ₂, ϑφ₁⟩) is
//! the plain matrix transpose, and the product of two anti-linear operators is
//! the ordinary linear operator M₂·conj(M₁).
//!
//! The crate provides:
//!
//! * [`op`] — the operator algebra: application, adjoint, composition,
//!   Hermitian/skew decomposition, the canonical Hermitian form
//!   (ϑ₁, ϑ₂) = Tr ϑ₂ϑ₁, structural predicates, and numerical-range sampling;
//! * [`basis`] — orthonormal bases of the Hermitian and skew-Hermitian operator
//!   spaces, Gram matrices, and dimension/signature counts d(d±1)/2;
//! * [`construct`] — explicit maximal orthogonal sets of (skew) conjugations:
//!   the d=2 quadruple τ₀..τ₃, tensor-product composition, the power-of-two
//!   recursion saturating the d(d±1)/2 bound, and a diagonal-Fourier baseline;
//! * [`search`] — a seeded gradient-descent search for orthogonal sets in
//!   arbitrary dimension, with Takagi factorization, certificates, and
//!   deterministic restarts.
//!
//! The crate is `no_std` (with `alloc`); wall-clock timing and parallelism are
//! injected by callers via [`search::Stopwatch`].

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod basis;
pub mod cmat;
pub mod construct;
pub(crate) mod eigh;
mod error;
pub mod op;
pub(crate) mod sampling;
pub mod search;

pub use cmat::{CMat, Complex64};
pub use error::{Error, Result};
pub use op::{AntiLinearOp, CanonicalValue, LinearOp};

/// Default tolerance for structural predicates (Hermitian, anti-unitary, ...).
///
/// Double-precision matrix products at dimension ≤ 64 keep residuals well
/// below this.
pub const DEFAULT_TOL: f64 = 1e-10;
