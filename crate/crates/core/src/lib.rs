//! Computational laboratory for Fourier coefficients of the weight-12
//! eigenform, Dirichlet and quadratic twists, the attached L-functions and
//! their GRH-conditional majorants, and empirical moment sums over character
//! families.
//!
//! Modules:
//! - [`arith`]: sieves, Kronecker symbols, multiplicative utilities, prime sums
//! - [`eigenform`]: exact tau(n) tables, lambda_f(n), Satake parameters
//! - [`dirichlet`]: character groups mod q, conductors, Gauss sums
//! - [`lfunc`]: zeta, twisted and symmetric-square L-values, majorants,
//!   envelope products
//! - [`moments`]: smoothing kernels, moment sweeps, verifiers, exponent fits

// `!(x >= bound)` guards are deliberate: unlike `x < bound`, they also
// reject NaN input.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arith;
pub mod dirichlet;
pub mod eigenform;
pub mod error;
pub mod lfunc;
pub mod moments;
pub mod summation;

pub use error::{Error, Result};

// The complex type that all L-value APIs speak.
pub use num_complex::Complex64;
