//! Goodness of generalized words in two positive definite matrices.
//!
//! A word `A^p1 B^q1 ... A^pk B^qk` with real exponents is *good* when every
//! substitution of Hermitian positive definite matrices yields only positive
//! real eigenvalues. This crate decides goodness where a combinatorial
//! criterion applies (near symmetry, subset-sum relations, exactness of the
//! pair-sum profile), expands traces symbolically under explicit unitary
//! parameterizations, and searches for concrete counterexamples otherwise.
//!
//! Matrix and polynomial code is generic over [`scalar::Real`]; the aliases
//! below fix double precision, which the search and classification layers
//! use throughout.

pub mod error;
pub mod gpoly;
pub mod gword;
pub mod json;
pub mod numeric;
pub mod pipeline;
pub mod scalar;
pub mod trace;

pub use error::{Error, ParseError, Result};
pub use gword::{Exponent, Letter, Word};

/// Double-precision complex scalar.
pub type C64 = num_complex::Complex<f64>;
pub type Matrix = numeric::CMatrix<f64>;
pub type Pd = numeric::HermitianPD<f64>;
pub type Poly = gpoly::GPoly<f64>;
pub type Param = trace::Parameterization<f64>;
pub type Expansion = trace::TraceExpansion<f64>;
