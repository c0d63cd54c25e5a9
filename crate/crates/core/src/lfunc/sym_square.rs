//! The symmetric-square L-function of f for Re s > 1, through the identity
//! L(s, sym^2 f) = zeta(2s) sum_{n>=1} lambda_f(n^2) n^{-s}.
//!
//! Coefficients lambda_f(n^2) come from the eigenform table, extended
//! multiplicatively past sqrt(N) by the Hecke recurrence (exact on the
//! overlap, tested). No analytic continuation: Re s <= 1 is rejected. The
//! rigorous divisor-bound tail is vacuous at the evaluation points
//! 1 + 1/log x + i alpha used by the prime-sum identities, so the reported
//! error estimate is the self-consistency gap between the full and the
//! half-length truncation.

use num_complex::Complex64;

use crate::eigenform::EigenformTable;
use crate::error::{Error, Result};
use crate::lfunc::twisted::LValue;
use crate::lfunc::zeta::zeta;
use crate::summation::KahanComplex;

/// Precomputed lambda_f(n^2) coefficients, reusable across evaluations.
pub struct SymSquareSeries {
    coeffs: Vec<f64>,
}

impl SymSquareSeries {
    /// Coefficients for n <= limit (limit <= table.n_max, since lambda_f(p)
    /// must be available for every prime p <= limit).
    pub fn new(table: &EigenformTable, limit: u64) -> Result<Self> {
        let coeffs = table.lambda_square_extended(limit)?;
        Ok(SymSquareSeries { coeffs })
    }

    pub fn limit(&self) -> u64 {
        self.coeffs.len() as u64 - 1
    }

    /// zeta(2s) sum_{n <= limit} lambda_f(n^2) n^{-s}, Re s > 1.
    pub fn eval(&self, s: Complex64) -> Result<LValue> {
        if s.re <= 1.0 {
            return Err(Error::invalid(format!(
                "sym^2 evaluation restricted to Re s > 1, got {}",
                s.re
            )));
        }
        let limit = self.limit();
        let zeta2s = zeta(2.0 * s)?;
        let full = self.dirichlet_sum(s, limit);
        let half = self.dirichlet_sum(s, limit / 2);
        Ok(LValue {
            value: zeta2s * full,
            error_estimate: zeta2s.norm() * (full - half).norm(),
        })
    }

    fn dirichlet_sum(&self, s: Complex64, up_to: u64) -> Complex64 {
        let mut acc = KahanComplex::new();
        for n in 1..=up_to {
            let c = self.coeffs[n as usize];
            if c != 0.0 {
                acc.add(c * (-s * (n as f64).ln()).exp());
            }
        }
        acc.value()
    }
}

/// One-shot evaluation over the full table.
pub fn l_sym_square(s: Complex64, table: &EigenformTable) -> Result<LValue> {
    SymSquareSeries::new(table, table.n_max())?.eval(s)
}
