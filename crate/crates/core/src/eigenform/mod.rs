//! Exact Fourier coefficients of the fixed weight-12 eigenform and the
//! derived normalized eigenvalues and Satake parameters.

pub mod cache;
mod ntt;
mod series;
mod table;

pub use ntt::square_poly_i128;
pub use series::{eta24_dense, eta3_sparse, DENSE_LIMIT};
pub use table::{solve_satake, EigenformTable, SatakePair, DEFAULT_N, WEIGHT};
