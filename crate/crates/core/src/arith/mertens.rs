//! Mertens-type prime sums: sum_{p<=x} 1/p, (log p)/p, and lambda_f(p)^2/p.
//!
//! The first grows like log log x + b1, the second like log x, the third like
//! log log x + b2. The constants b1, b2 are never pinned down analytically
//! here; callers estimate them from the stabilization of
//! `mertens_sum(x) - log log x` across x and treat them as diagnostics.

use crate::arith::sieve::PrimeSieve;
use crate::eigenform::EigenformTable;
use crate::error::{Error, Result};
use crate::summation::KahanSum;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MertensVariant {
    /// sum_{p<=x} 1/p
    Reciprocal,
    /// sum_{p<=x} (log p)/p
    LogWeighted,
    /// sum_{p<=x} lambda_f(p)^2/p; needs an eigenform table covering p <= x
    LambdaSquared,
}

/// Prime sum in ascending prime order with compensated summation.
pub fn mertens_sum(
    sieve: &PrimeSieve,
    x: f64,
    variant: MertensVariant,
    eigenvalues: Option<&EigenformTable>,
) -> Result<f64> {
    if !(x >= 2.0) {
        return Err(Error::invalid(format!("mertens_sum needs x >= 2, got {x}")));
    }
    let bound = x.floor() as u64;
    let primes = sieve.primes_up_to(bound)?;
    if let MertensVariant::LambdaSquared = variant {
        let table = eigenvalues
            .ok_or_else(|| Error::invalid("lambda_squared variant requires an eigenform table"))?;
        if table.n_max() < bound {
            return Err(Error::TableTooSmall {
                needed: bound,
                available: table.n_max(),
            });
        }
    }
    let mut acc = KahanSum::new();
    for &p in primes {
        let pf = p as f64;
        let term = match variant {
            MertensVariant::Reciprocal => 1.0 / pf,
            MertensVariant::LogWeighted => pf.ln() / pf,
            MertensVariant::LambdaSquared => {
                let l = eigenvalues.unwrap().lambda(p);
                l * l / pf
            }
        };
        acc.add(term);
    }
    Ok(acc.value())
}
