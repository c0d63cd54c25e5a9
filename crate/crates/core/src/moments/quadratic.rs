//! The quadratic-family moment sum T_m(X, Y; f): over odd square-free
//! d <= X, the 2m-th power of |sum_{n<=Y} (8d|n) lambda_f(n) Phi_U(n/Y)|.
//!
//! Per discriminant, the completely multiplicative values (8d|n) are filled
//! from Kronecker symbols at primes through a smallest-prime-factor table,
//! so the inner loop costs O(Y) with O(pi(Y)) symbol evaluations.

use std::time::Instant;

use crate::arith::{kronecker, SquareFreeOddEnumerator};
use crate::eigenform::EigenformTable;
use crate::error::{Error, Result};
use crate::moments::kernel::SmoothingKernel;
use crate::moments::parallel::run_chunked;
use crate::moments::report::{MomentFamily, MomentReport};
use crate::summation::KahanSum;

const CHUNK: usize = 64;

/// E(m, k, eps) = max(2m^2 - 3m + k + 1, (m-k)^2 + 2k^2 - k + eps,
/// (m-k)^2 + 2k^2 - m + eps).
pub fn quadratic_envelope_exponent(m: f64, k: u32, eps: f64) -> f64 {
    let kf = k as f64;
    let first = 2.0 * m * m - 3.0 * m + kf + 1.0;
    let second = (m - kf) * (m - kf) + 2.0 * kf * kf - kf + eps;
    let third = (m - kf) * (m - kf) + 2.0 * kf * kf - m + eps;
    first.max(second).max(third)
}

/// Constant-free envelope X Y^m (log X)^{E(m,k,eps)}.
pub fn quadratic_envelope(x: u64, y: u64, m: f64, k: u32, eps: f64) -> f64 {
    x as f64 * (y as f64).powf(m) * (x as f64).ln().powf(quadratic_envelope_exponent(m, k, eps))
}

/// T_m with the default envelope parameters k = 1, eps = 0 (exponent
/// 2m^2 - 3m + 2 for m >= 2).
pub fn moment_quadratic(
    x: u64,
    y: u64,
    m: f64,
    table: &EigenformTable,
    kernel: Option<&SmoothingKernel>,
    threads: usize,
) -> Result<MomentReport> {
    moment_quadratic_with_exponent(x, y, m, table, kernel, 1, 0.0, threads)
}

#[allow(clippy::too_many_arguments)]
pub fn moment_quadratic_with_exponent(
    x: u64,
    y: u64,
    m: f64,
    table: &EigenformTable,
    kernel: Option<&SmoothingKernel>,
    k: u32,
    eps: f64,
    threads: usize,
) -> Result<MomentReport> {
    Ok(moment_quadratic_many(x, y, &[m], table, kernel, k, eps, threads)?.remove(0))
}

/// One report per moment order, sharing the per-discriminant inner sums.
#[allow(clippy::too_many_arguments)]
pub fn moment_quadratic_many(
    x: u64,
    y: u64,
    orders: &[f64],
    table: &EigenformTable,
    kernel: Option<&SmoothingKernel>,
    k: u32,
    eps: f64,
    threads: usize,
) -> Result<Vec<MomentReport>> {
    let start = Instant::now();
    if orders.is_empty() {
        return Err(Error::invalid("need at least one moment order"));
    }
    for &m in orders {
        if !(m > 0.0) {
            return Err(Error::invalid(format!("moment order m = {m} must be > 0")));
        }
    }
    if x < 3 {
        return Err(Error::invalid("family bound X must be at least 3"));
    }
    if y == 0 || y > x {
        return Err(Error::invalid(format!(
            "inner length must satisfy 1 <= Y <= X, got Y = {y}, X = {x}"
        )));
    }
    if table.n_max() < y {
        return Err(Error::TableTooSmall {
            needed: y,
            available: table.n_max(),
        });
    }
    let discriminants = SquareFreeOddEnumerator::to_vec(x);
    // lambda_f(n) Phi_U(n/Y), shared across the family.
    let weights: Vec<f64> = (0..=y)
        .map(|n| {
            if n == 0 {
                0.0
            } else {
                let w = kernel.map_or(1.0, |k| k.eval(n as f64 / y as f64));
                table.lambda(n) * w
            }
        })
        .collect();
    let spf = smallest_prime_factors(y);

    // Squared inner sums per discriminant, in ascending-d order.
    let chunks = run_chunked(discriminants.len(), CHUNK, threads, |range| {
        let mut norms = Vec::with_capacity(range.len());
        let mut values = vec![0.0f64; y as usize + 1];
        for &d in &discriminants[range] {
            fill_kronecker_values(8 * d, &spf, &mut values);
            let mut inner = KahanSum::new();
            for (n, &w) in weights.iter().enumerate().skip(1) {
                let v = values[n];
                if v != 0.0 && w != 0.0 {
                    inner.add(v * w);
                }
            }
            let s = inner.value();
            norms.push(s * s);
        }
        norms
    });
    let elapsed = start.elapsed();
    let reports = orders
        .iter()
        .map(|&m| {
            let mut total = KahanSum::new();
            for chunk in &chunks {
                for &nsq in chunk {
                    total.add(nsq.powf(m));
                }
            }
            MomentReport::new(
                MomentFamily::Quadratic,
                x,
                y,
                m,
                kernel.map(|k| k.u()),
                discriminants.len() as u64,
                total.value(),
                quadratic_envelope(x, y, m, k, eps),
                elapsed,
            )
        })
        .collect();
    Ok(reports)
}

fn smallest_prime_factors(limit: u64) -> Vec<u32> {
    let n = limit as usize;
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            for j in (i..=n).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
            }
        }
    }
    spf
}

/// values[n] = (top|n) for n <= limit, via complete multiplicativity from
/// the prime values.
fn fill_kronecker_values(top: u64, spf: &[u32], values: &mut [f64]) {
    values[0] = 0.0;
    if values.len() > 1 {
        values[1] = 1.0;
    }
    for n in 2..values.len() {
        let p = spf[n] as usize;
        if p == n {
            values[n] = kronecker(top as i64, n as i64) as f64;
        } else {
            values[n] = values[p] * values[n / p];
        }
    }
}
