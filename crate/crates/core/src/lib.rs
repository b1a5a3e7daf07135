//! Core algebra for an integrable nineteen-vertex model.
//!
//! The model's fourteen Boltzmann weights live on a degree-seven projective
//! threefold that is birationally equivalent to `CP^3`. This crate builds the
//! weights in three coordinate charts (threefold, parameterized spectral,
//! quartic-surface), assembles the 9x9 transition operator and the matching
//! R-matrix, and exposes the algebraic contracts they satisfy — Yang-Baxter,
//! unitarity, regularity, divisor constancy, transfer-matrix commutativity and
//! the Hamiltonian limit — as residuals that vanish identically.
//!
//! All constructions are generic over a [`scalar::Scalar`] field. The exact
//! backend ([`num_rational::BigRational`]) certifies identities with zero
//! rounding; the complex float backend handles spectra and the two singular
//! points that need `i*sqrt(3)`; the jet backend realizes first-order
//! expansions without truncation error; and a quadratic extension field keeps
//! quartic-surface sampling exact.
//!
//! The crate is `no_std` (with `alloc`): it performs no IO. File formats,
//! sampling campaigns and reports live in the companion CLI crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod couplings;
pub mod error;
pub mod geometry;
pub mod hamiltonian;
pub mod lax;
pub mod matrix;
pub mod projective;
pub mod rmatrix;
pub mod sample;
pub mod scalar;
pub mod transfer;
pub mod variety;
pub mod weights;

pub use couplings::Couplings;
pub use error::Error;
pub use matrix::DenseMatrix;
pub use projective::ProjectivePoint;
pub use scalar::{Jet, QuadExt, Rat, Scalar, C64};
pub use weights::{K3Point, SpectralPoint, ThreefoldPoint, WeightSet};
