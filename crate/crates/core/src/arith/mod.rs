//! Prime sieves, multiplicative-function utilities, Kronecker symbols,
//! square-free enumeration, the A(d) weight, and Mertens-type prime sums.

mod kronecker;
mod mertens;
mod multiplicative;
mod sieve;

pub use kronecker::kronecker;
pub use mertens::{mertens_sum, MertensVariant};
pub use multiplicative::{divisor_count, euler_weight_a, Rational64, SquareFreeOddEnumerator};
pub use sieve::{PrimeSieve, DEFAULT_SIEVE_LIMIT};
