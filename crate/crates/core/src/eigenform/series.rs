//! Exact integer power series for eta products.
//!
//! tau(n) is the coefficient of q^{n-1} in prod_{m>=1}(1 - q^m)^24, computed
//! as the eighth power of Jacobi's sparse series
//!
//!   prod_{m>=1}(1 - q^m)^3 = sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2},
//!
//! via three squarings: sparse^2 -> eta^6, then two dense squarings to
//! eta^12 and eta^24. Intermediate coefficients fit i64 (checked); the final
//! accumulation runs in i128 behind a one-shot a-priori overflow check, so
//! the hot loop carries no per-term branches.

use crate::error::{Error, Result};

/// Truncation bound above which the dense O(len^2) squarings are not used;
/// larger tables go through the NTT builder.
pub const DENSE_LIMIT: usize = 40_000;

/// Nonzero coefficients of prod(1 - q^m)^3 up to degree < len:
/// value (-1)^k (2k+1) at index k(k+1)/2.
pub fn eta3_sparse(len: usize) -> Vec<(usize, i64)> {
    let mut out = Vec::new();
    let mut k = 0usize;
    loop {
        let idx = k * (k + 1) / 2;
        if idx >= len {
            break;
        }
        let c = (2 * k + 1) as i64;
        out.push((idx, if k % 2 == 0 { c } else { -c }));
        k += 1;
    }
    out
}

fn square_sparse(sparse: &[(usize, i64)], len: usize) -> Result<Vec<i64>> {
    let mut out = vec![0i64; len];
    for (a, &(i, ci)) in sparse.iter().enumerate() {
        for &(j, cj) in &sparse[a..] {
            let idx = i + j;
            if idx >= len {
                break;
            }
            let prod = ci
                .checked_mul(cj)
                .and_then(|p| if i == j { Some(p) } else { p.checked_mul(2) })
                .ok_or(Error::TauOverflow { n: idx as u64 + 1 })?;
            out[idx] = out[idx]
                .checked_add(prod)
                .ok_or(Error::TauOverflow { n: idx as u64 + 1 })?;
        }
    }
    Ok(out)
}

fn square_dense_i64(a: &[i64]) -> Result<Vec<i64>> {
    let len = a.len();
    let mut out = vec![0i64; len];
    for (n, slot) in out.iter_mut().enumerate() {
        let mut acc: i128 = 0;
        let half = n / 2;
        for i in 0..=half {
            let j = n - i;
            let prod = a[i] as i128 * a[j] as i128;
            acc += if i == j { prod } else { 2 * prod };
        }
        *slot = i64::try_from(acc).map_err(|_| Error::TauOverflow { n: n as u64 + 1 })?;
    }
    Ok(out)
}

fn square_dense_i128(a: &[i64]) -> Result<Vec<i128>> {
    let len = a.len();
    // One global check: len * max|a|^2 must stay inside i128, then the inner
    // loop can accumulate unchecked.
    let max = a.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0) as u128;
    let budget = (i128::MAX as u128) / 2;
    if max > 0 && (len as u128).saturating_mul(max).saturating_mul(max) > budget {
        return Err(Error::TauOverflow { n: len as u64 });
    }
    let mut out = vec![0i128; len];
    for (n, slot) in out.iter_mut().enumerate() {
        let mut acc: i128 = 0;
        let half = n / 2;
        for i in 0..=half {
            let j = n - i;
            let prod = a[i] as i128 * a[j] as i128;
            acc += if i == j { prod } else { 2 * prod };
        }
        *slot = acc;
    }
    Ok(out)
}

/// Coefficients of prod(1 - q^m)^24 up to degree < len by dense squaring.
/// tau(n) = result[n - 1].
pub fn eta24_dense(len: usize) -> Result<Vec<i128>> {
    assert!(len <= DENSE_LIMIT, "dense path capped; use the NTT builder");
    let eta3 = eta3_sparse(len);
    let eta6 = square_sparse(&eta3, len)?;
    let eta12 = square_dense_i64(&eta6)?;
    square_dense_i128(&eta12)
}
