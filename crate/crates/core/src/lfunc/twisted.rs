//! Numerical values of L(s, f (x) chi) by Gaussian-smoothed truncation.
//!
//! The Dirichlet series is summed against exp(-(n/M)^2); because the
//! completed L-function is entire, the smoothed sum differs from L(s) by
//! correction terms of size ~ |L(s - 2k)| M^{-2k}, negligible once M is a
//! modest multiple of q(1 + |t|). No certified bound is attached; the
//! accuracy contract is self-consistency between the cutoffs M and 2M, and
//! the reported `error_estimate` is exactly that discrepancy.

use num_complex::Complex64;

use crate::dirichlet::DirichletCharacter;
use crate::eigenform::EigenformTable;
use crate::error::{Error, Result};
use crate::lfunc::gamma::ln_gamma;
use crate::summation::KahanComplex;

/// A computed L-value with its self-consistency error estimate.
#[derive(Debug, Clone, Copy)]
pub struct LValue {
    pub value: Complex64,
    pub error_estimate: f64,
}

impl LValue {
    /// The M vs 2M agreement contract at a given tolerance.
    pub fn is_converged(&self, tol: f64) -> bool {
        self.error_estimate <= tol
    }
}

/// Default truncation 30 q (1 + |t|), capped by the table.
pub fn default_cutoff(q: u64, t: f64, table_n: u64) -> u64 {
    let m = (30.0 * q as f64 * (1.0 + t.abs())).ceil() as u64;
    m.clamp(64, table_n)
}

/// Smoothed sum of lambda_f(n) twist(n) n^{-s} exp(-(n/cutoff)^2) for an
/// arbitrary completely multiplicative twist supplied as a closure. The
/// value is taken at min(2 cutoff, N); the error estimate is the gap to the
/// previous cutoff.
pub fn l_series_smoothed<F>(
    s: Complex64,
    twist: F,
    table: &EigenformTable,
    cutoff: u64,
) -> Result<LValue>
where
    F: Fn(u64) -> Complex64,
{
    if s.re < 0.5 - 1e-12 {
        return Err(Error::invalid(format!(
            "l-value evaluation needs Re s >= 1/2, got {}",
            s.re
        )));
    }
    if cutoff < 8 || cutoff > table.n_max() {
        return Err(Error::TableTooSmall {
            needed: cutoff.max(8),
            available: table.n_max(),
        });
    }
    let hi = (2 * cutoff).min(table.n_max());
    let lo = if hi > cutoff { cutoff } else { cutoff / 2 };
    let value_hi = smoothed_sum(s, &twist, table, hi);
    let value_lo = smoothed_sum(s, &twist, table, lo);
    Ok(LValue {
        value: value_hi,
        error_estimate: (value_hi - value_lo).norm(),
    })
}

fn smoothed_sum<F>(s: Complex64, twist: &F, table: &EigenformTable, cutoff: u64) -> Complex64
where
    F: Fn(u64) -> Complex64,
{
    // exp(-36) ~ 2e-16: terms beyond 6 cutoff are below f64 resolution.
    let top = (6 * cutoff).min(table.n_max());
    let inv_m2 = 1.0 / (cutoff as f64 * cutoff as f64);
    let mut acc = KahanComplex::new();
    for n in 1..=top {
        let c = twist(n);
        if c.re == 0.0 && c.im == 0.0 {
            continue;
        }
        let nf = n as f64;
        let weight = (-(nf * nf) * inv_m2).exp();
        if weight == 0.0 {
            break;
        }
        let term = c * table.lambda(n) * (-s * nf.ln()).exp() * weight;
        acc.add(term);
    }
    acc.value()
}

/// L(s, f (x) chi) by smoothed truncation.
pub fn l_twisted(
    s: Complex64,
    chi: &DirichletCharacter,
    table: &EigenformTable,
    cutoff: u64,
) -> Result<LValue> {
    l_series_smoothed(s, |n| chi.eval(n), table, cutoff)
}

/// The completed L-function Lambda(s) = (q/2pi)^s Gamma(s + (kappa-1)/2) L(s),
/// the object tied to its reflection at 1-s by the functional equation.
pub fn completed_l(
    s: Complex64,
    chi: &DirichletCharacter,
    table: &EigenformTable,
    cutoff: u64,
) -> Result<LValue> {
    let l = l_twisted(s, chi, table, cutoff)?;
    let q = chi.modulus() as f64;
    let half_shift = (table.weight() as f64 - 1.0) / 2.0;
    let factor =
        (s * (q / (2.0 * std::f64::consts::PI)).ln()).exp() * ln_gamma(s + half_shift).exp();
    Ok(LValue {
        value: factor * l.value,
        error_estimate: factor.norm() * l.error_estimate,
    })
}
