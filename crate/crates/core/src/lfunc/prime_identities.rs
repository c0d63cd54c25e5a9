//! Prime-sum identities linking cosine-weighted Mertens sums to log |zeta|
//! and log |L(sym^2 f)| at 1 + 1/log x + i alpha. The identities hold up to
//! O(1); the gap functions here return the measured absolute difference so
//! sweeps can budget that constant empirically.

use num_complex::Complex64;

use crate::arith::PrimeSieve;
use crate::eigenform::EigenformTable;
use crate::error::Result;
use crate::lfunc::sym_square::SymSquareSeries;
use crate::lfunc::zeta::zeta;
use crate::summation::KahanSum;

/// sum_{p<=x} cos(alpha log p) / p.
pub fn cos_weighted_prime_sum(sieve: &PrimeSieve, x: f64, alpha: f64) -> Result<f64> {
    let mut acc = KahanSum::new();
    for &p in sieve.primes_up_to(x.floor() as u64)? {
        let pf = p as f64;
        acc.add((alpha * pf.ln()).cos() / pf);
    }
    Ok(acc.value())
}

/// sum_{p<=x} cos(alpha log p) lambda_f(p^2) / p, with lambda_f(p^2) =
/// lambda_f(p)^2 - 1 off the table.
pub fn cos_weighted_sym_prime_sum(
    sieve: &PrimeSieve,
    table: &EigenformTable,
    x: f64,
    alpha: f64,
) -> Result<f64> {
    let bound = x.floor() as u64;
    if table.n_max() < bound {
        return Err(crate::error::Error::TableTooSmall {
            needed: bound,
            available: table.n_max(),
        });
    }
    let mut acc = KahanSum::new();
    for &p in sieve.primes_up_to(bound)? {
        let pf = p as f64;
        let lam = table.lambda(p);
        acc.add((alpha * pf.ln()).cos() * (lam * lam - 1.0) / pf);
    }
    Ok(acc.value())
}

/// | sum cos(alpha log p)/p - log |zeta(1 + 1/log x + i alpha)| |.
pub fn zeta_identity_gap(sieve: &PrimeSieve, x: f64, alpha: f64) -> Result<f64> {
    let lhs = cos_weighted_prime_sum(sieve, x, alpha)?;
    let s = Complex64::new(1.0 + 1.0 / x.ln(), alpha);
    let rhs = zeta(s)?.norm().ln();
    Ok((lhs - rhs).abs())
}

/// Same gap for the symmetric-square identity; the series is passed in so a
/// grid sweep prices its coefficients once.
pub fn sym_identity_gap(
    sieve: &PrimeSieve,
    table: &EigenformTable,
    sym: &SymSquareSeries,
    x: f64,
    alpha: f64,
) -> Result<f64> {
    let lhs = cos_weighted_sym_prime_sum(sieve, table, x, alpha)?;
    let s = Complex64::new(1.0 + 1.0 / x.ln(), alpha);
    let rhs = sym.eval(s)?.value.norm().ln();
    Ok((lhs - rhs).abs())
}
