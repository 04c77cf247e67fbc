//! Toeplitz (anti-Wick) operators on the one-dimensional Segal-Bargmann space.
//!
//! The crate works with finite truncations in the orthonormal monomial basis
//! `e_n = z^n / sqrt(n!)`. Radial symbols become diagonal operators whose
//! diagonal is the gamma sequence
//!
//! ```text
//! gamma_a(n) = 1/n! * integral_0^inf a(sqrt(s)) s^n e^{-s} ds
//! ```
//!
//! Modules:
//! - [`symbols`]: closed-form symbols, evaluation, class membership, `q_f` and `A_f`.
//! - [`quadrature`]: generalized Gauss-Laguerre rules and gamma sequences.
//! - [`fock`]: coherent states, Toeplitz matrices, ladder operators, Wick symbols, norms.
//! - [`calculus`]: diamond product, Wick series, heat transform.
//! - [`composition`]: composition of radial Toeplitz operators and the obstruction classifier.
//! - [`report`]: deterministic JSON/CSV output helpers.

// NaN-rejecting checks are written as `!(x < bound)` on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod calculus;
pub mod composition;
mod error;
pub mod fock;
pub mod quadrature;
pub mod report;
mod special;
pub mod symbols;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
