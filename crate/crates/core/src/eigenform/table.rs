//! The fixed eigenform realized concretely as the weight-12 discriminant
//! form: exact integer tau(n), normalized eigenvalues lambda_f(n) =
//! tau(n)/n^{11/2}, and Satake parameters.
//!
//! The table abstraction would admit any level-1 eigenform with weight
//! divisible by 4 whose lambda_f(p) can be seeded; Delta is the one whose
//! coefficients are exactly computable by elementary series arithmetic.

use num_complex::Complex64;

use crate::eigenform::{ntt, series};
use crate::error::{Error, Result};

/// Weight of the discriminant form.
pub const WEIGHT: u32 = 12;

/// Default coefficient bound; large enough for every default experiment and
/// cheap to build densely.
pub const DEFAULT_N: u64 = 20_000;

/// Exact tau(n) and float lambda_f(n) for 1 <= n <= n_max. Immutable once
/// built; share by reference across threads.
pub struct EigenformTable {
    n_max: u64,
    /// tau[n] for 1 <= n <= n_max; tau[0] is unused.
    tau: Vec<i128>,
    /// lambda[n] = tau(n) / n^{11/2}.
    lambda: Vec<f64>,
}

/// Satake parameters at a prime: conjugate pair on the unit circle with
/// alpha + beta = lambda_f(p) and alpha * beta = 1.
#[derive(Debug, Clone, Copy)]
pub struct SatakePair {
    pub alpha: Complex64,
    pub beta: Complex64,
}

/// Roots of z^2 - lambda z + 1 for |lambda| <= 2; alpha is the root with
/// non-negative imaginary part.
pub fn solve_satake(lambda: f64) -> Result<SatakePair> {
    if !(lambda.abs() <= 2.0 + 1e-12) {
        return Err(Error::invalid(format!(
            "satake parameters need |lambda| <= 2, got {lambda}"
        )));
    }
    let half = lambda / 2.0;
    let disc = (1.0 - half * half).max(0.0);
    let im = disc.sqrt();
    Ok(SatakePair {
        alpha: Complex64::new(half, im),
        beta: Complex64::new(half, -im),
    })
}

/// Smallest n whose a-priori bound |tau(n)| < 2 n^6 no longer fits the
/// reconstruction headroom (2^126).
fn first_overflowing_n() -> u64 {
    let fits = |n: u64| {
        (n as u128)
            .pow(6)
            .checked_mul(2)
            .is_some_and(|b| b < 1u128 << 126)
    };
    let mut n = 1u64;
    while fits(n) {
        n *= 2;
    }
    let mut lo = n / 2; // fits
    let mut hi = n; // does not
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

impl EigenformTable {
    /// Build the table for n <= n_max. Dense squaring below
    /// `series::DENSE_LIMIT`, NTT-based exact squaring above.
    pub fn build(n_max: u64) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::invalid("eigenform table needs n_max >= 1"));
        }
        let cap = first_overflowing_n();
        if n_max >= cap {
            return Err(Error::TauOverflow { n: cap });
        }
        let len = n_max as usize;
        let coeffs = if len <= series::DENSE_LIMIT {
            series::eta24_dense(len)?
        } else {
            ntt::eta24_ntt(len)?
        };
        Ok(Self::from_tau_coeffs(n_max, coeffs))
    }

    /// Assemble from the eta^24 coefficient vector (tau(n) at index n-1).
    fn from_tau_coeffs(n_max: u64, coeffs: Vec<i128>) -> Self {
        let mut tau = Vec::with_capacity(n_max as usize + 1);
        tau.push(0);
        tau.extend_from_slice(&coeffs[..n_max as usize]);
        Self::from_tau(n_max, tau)
    }

    /// Assemble from a 1-based tau vector (`tau[0]` ignored), deriving the
    /// normalized eigenvalues. Used by the builder and the cache loader.
    pub(crate) fn from_tau(n_max: u64, tau: Vec<i128>) -> Self {
        assert_eq!(tau.len() as u64, n_max + 1);
        let mut lambda = Vec::with_capacity(tau.len());
        lambda.push(0.0);
        for n in 1..=n_max {
            lambda.push(tau[n as usize] as f64 / (n as f64).powf(5.5));
        }
        EigenformTable { n_max, tau, lambda }
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn weight(&self) -> u32 {
        WEIGHT
    }

    /// Exact tau(n), 1 <= n <= n_max.
    #[inline]
    pub fn tau(&self, n: u64) -> i128 {
        self.tau[n as usize]
    }

    /// lambda_f(n) = tau(n)/n^{11/2}, 1 <= n <= n_max.
    #[inline]
    pub fn lambda(&self, n: u64) -> f64 {
        self.lambda[n as usize]
    }

    pub fn tau_slice(&self) -> &[i128] {
        &self.tau
    }

    /// Satake parameters at a prime p <= n_max.
    pub fn satake(&self, p: u64) -> Result<SatakePair> {
        if p < 2 || p > self.n_max {
            return Err(Error::invalid(format!(
                "satake: p = {p} outside table range 2..={}",
                self.n_max
            )));
        }
        if !is_prime_trial(p) {
            return Err(Error::NotPrime { n: p });
        }
        solve_satake(self.lambda(p))
    }

    /// lambda_f(n^2) read from the table; needs n^2 <= n_max.
    pub fn lambda_square(&self, n: u64) -> Result<f64> {
        let sq = n
            .checked_mul(n)
            .filter(|&sq| sq <= self.n_max && n >= 1)
            .ok_or(Error::TableTooSmall {
                needed: n.saturating_mul(n),
                available: self.n_max,
            })?;
        Ok(self.lambda(sq))
    }

    /// lambda_f(n^2) for all n <= limit, extended multiplicatively past
    /// sqrt(n_max) by the Hecke recurrence on lambda_f(p^j). Agrees with
    /// `lambda_square` wherever both are defined.
    pub fn lambda_square_extended(&self, limit: u64) -> Result<Vec<f64>> {
        if limit > self.n_max {
            return Err(Error::TableTooSmall {
                needed: limit,
                available: self.n_max,
            });
        }
        let lim = limit as usize;
        let mut spf = vec![0u32; lim + 1];
        for i in 2..=lim {
            if spf[i] == 0 {
                for m in (i..=lim).step_by(i) {
                    if spf[m] == 0 {
                        spf[m] = i as u32;
                    }
                }
            }
        }
        let mut out = vec![0.0f64; lim + 1];
        if lim >= 1 {
            out[1] = 1.0;
        }
        for n in 2..=lim {
            let p = spf[n] as usize;
            let mut m = n;
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out[n] = out[m] * self.lambda_prime_power(p as u64, 2 * e);
        }
        Ok(out)
    }

    /// lambda_f(p^j) by the recurrence lambda(p^{j+1}) =
    /// lambda(p) lambda(p^j) - lambda(p^{j-1}).
    fn lambda_prime_power(&self, p: u64, j: u32) -> f64 {
        let lp = self.lambda(p);
        let (mut prev, mut cur) = (1.0f64, lp);
        if j == 0 {
            return 1.0;
        }
        for _ in 1..j {
            let next = lp * cur - prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Re-check the structural invariants: lambda(1) = 1, the Deligne bound
    /// |lambda(n)| <= d(n) with strict slack, the exact prime-power
    /// recurrence, and exact coprime multiplicativity on a bounded range.
    /// Run after deserialization and in the test suites.
    pub fn validate(&self) -> Result<()> {
        if self.tau(1) != 1 || self.lambda(1) != 1.0 {
            return Err(Error::CacheInvalid("tau(1) != 1".into()));
        }
        let n = self.n_max as usize;
        // Divisor counts by the divisor sieve.
        let mut d = vec![0u32; n + 1];
        for i in 1..=n {
            for m in (i..=n).step_by(i) {
                d[m] += 1;
            }
        }
        // n = 1 is exact equality (lambda = d = 1); beyond it the bound is
        // strict and must hold with real margin.
        for k in 2..=n {
            let slack = d[k] as f64 - self.lambda[k].abs();
            if !(slack > 1e-9) {
                return Err(Error::CacheInvalid(format!(
                    "Deligne bound violated at n = {k}: |lambda| = {}, d = {}",
                    self.lambda[k].abs(),
                    d[k]
                )));
            }
        }
        // tau(p^{l+1}) = tau(p) tau(p^l) - p^11 tau(p^{l-1}), exact.
        for p in 2..=self.n_max {
            if p * p > self.n_max {
                break;
            }
            if !is_prime_trial(p) {
                continue;
            }
            let p11 = (p as i128).pow(11);
            let mut power = p * p;
            let mut l = 1u32;
            while power <= self.n_max {
                let lhs = self.tau(power);
                let rhs = self
                    .tau(p)
                    .checked_mul(self.tau(p.pow(l)))
                    .and_then(|t| t.checked_sub(p11.checked_mul(self.tau(p.pow(l - 1)))?))
                    .ok_or(Error::TauOverflow { n: power })?;
                if lhs != rhs {
                    return Err(Error::CacheInvalid(format!(
                        "Hecke recurrence fails at p = {p}, power = {power}"
                    )));
                }
                l += 1;
                power = match power.checked_mul(p) {
                    Some(v) => v,
                    None => break,
                };
            }
        }
        // Exact multiplicativity on coprime pairs, bounded sweep.
        for m in 2..=self.n_max.min(200) {
            let mut k = m + 1;
            while m * k <= self.n_max {
                if gcd(m, k) == 1 {
                    let prod = self
                        .tau(m)
                        .checked_mul(self.tau(k))
                        .ok_or(Error::TauOverflow { n: m * k })?;
                    if prod != self.tau(m * k) {
                        return Err(Error::CacheInvalid(format!(
                            "multiplicativity fails at ({m}, {k})"
                        )));
                    }
                }
                k += 1;
            }
        }
        Ok(())
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_cap_is_sane() {
        let cap = first_overflowing_n();
        // 2 n^6 < 2^126 up to roughly 1.8 * 10^6.
        assert!(cap > 1_500_000 && cap < 2_500_000);
        assert!(EigenformTable::build(cap).is_err());
        assert!(matches!(
            EigenformTable::build(u64::MAX),
            Err(Error::TauOverflow { .. })
        ));
    }

    #[test]
    fn lambda_normalization() {
        let t = EigenformTable::build(100).unwrap();
        assert_eq!(t.lambda(1), 1.0);
        assert_eq!(t.tau(2), -24);
        // lambda(2) = -24 / 2^{5.5}
        let expected = -24.0 / 2f64.powf(5.5);
        assert!((t.lambda(2) - expected).abs() < 1e-15);
        assert!((t.lambda(2) + 0.53033).abs() < 1e-5);
        // Hecke relation lambda(4) = lambda(2)^2 - 1 and tau(4) = -1472.
        assert_eq!(t.tau(4), -1472);
        assert!((t.lambda(4) - (t.lambda(2) * t.lambda(2) - 1.0)).abs() < 1e-12);
        assert!((t.lambda(4) + 0.71875).abs() < 1e-10);
    }

    #[test]
    fn satake_pairs() {
        // Hypothetical boundary values exercise the solver shape.
        let boundary = solve_satake(2.0).unwrap();
        assert!((boundary.alpha - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((boundary.beta - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let symmetric = solve_satake(0.0).unwrap();
        assert!((symmetric.alpha - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        assert!((symmetric.beta - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!(solve_satake(2.5).is_err());

        let t = EigenformTable::build(100).unwrap();
        let pair = t.satake(2).unwrap();
        assert!((pair.alpha + pair.beta - Complex64::new(t.lambda(2), 0.0)).norm() < 1e-12);
        assert!(((pair.alpha + pair.beta).re + 0.53033).abs() < 1e-5);
        assert!((pair.alpha.norm() - 1.0).abs() < 1e-12);
        assert!((pair.alpha * pair.beta - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(t.satake(4).is_err());
        assert!(t.satake(101).is_err());
    }

    #[test]
    fn lambda_square_paths_agree() {
        let t = EigenformTable::build(10_000).unwrap();
        assert_eq!(t.lambda_square(1).unwrap(), 1.0);
        assert!((t.lambda_square(2).unwrap() + 0.71875).abs() < 1e-10);
        let ext = t.lambda_square_extended(10_000).unwrap();
        for n in 1..=100u64 {
            let direct = t.lambda_square(n).unwrap();
            let rel = (ext[n as usize] - direct).abs() / direct.abs().max(1e-30);
            assert!(rel < 1e-12, "n = {n}: {} vs {direct}", ext[n as usize]);
        }
        // Forced by the Satake relation: lambda(p^2) = lambda(p)^2 - 1.
        for p in [2u64, 3, 5, 7, 11, 13, 97] {
            let lp = t.lambda(p);
            assert!((t.lambda_square(p).unwrap() - (lp * lp - 1.0)).abs() < 1e-12);
        }
        assert!(t.lambda_square(101).is_err());
    }

    #[test]
    fn validate_accepts_fresh_table() {
        let t = EigenformTable::build(2_000).unwrap();
        t.validate().unwrap();
    }

    #[test]
    fn validate_rejects_corruption() {
        let t = EigenformTable::build(500).unwrap();
        let mut tau = t.tau_slice().to_vec();
        tau[6] += 1; // breaks tau(2)tau(3) = tau(6)
        let bad = EigenformTable::from_tau(500, tau);
        assert!(bad.validate().is_err());
    }
}
