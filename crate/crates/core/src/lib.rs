//! Numerics for generalized hypergeometric functions and their expansions.
//!
//! The crate is organized around a small formal-series/operator algebra
//! ([`algebra`]) on which everything else is built:
//!
//! - [`hyper`] — pFq parameters, direct series evaluation, the associated
//!   Euler-operator form of the hypergeometric equation;
//! - [`polylog`] — nested polylogarithms, multiple zeta values, zeta tails;
//! - [`special`] — Gamma/digamma, Bernoulli numbers, symmetric polynomials
//!   and the restricted quadratic-form determinant;
//! - [`frobenius`] — local solution bases at regular singular points (with
//!   logarithms), formal solutions at infinity, connection coefficients,
//!   the Airy-normalizing change of variables and the fundamental-matrix
//!   conjugation for perturbed Airy equations;
//! - [`integrals`] — circle-contour residues, Gauss–Jacobi quadrature and
//!   the residue/hypercube integral representations of pFq;
//! - [`wkb`] — WKB data at irregular singularities (large argument) and for
//!   large upper parameters (Hamilton–Jacobi actions, transport amplitudes,
//!   stationary-phase constants), plus the Kummer Stokes constants;
//! - [`variations`] — perturbation expansions of hypergeometric equations;
//! - [`genfun`] — the MZV generating functions and their identities;
//! - [`suites`] — the self-verification suites exposed by the CLI.
//!
//! The crate is `no_std` (requires `alloc`); all floating-point math routes
//! through `libm`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod error;
pub(crate) mod fmath;
pub mod frobenius;
pub mod genfun;
pub mod hyper;
pub mod integrals;
pub mod polylog;
pub mod rng;
pub mod scalar;
pub mod special;
pub mod suites;
pub mod variations;
pub mod wkb;

pub use error::Error;
pub use scalar::{Rat, Scalar};

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;

/// Shorthand used throughout for double-precision complex numbers.
pub type C64 = num_complex::Complex64;
