//! Bit-packed sieve of Eratosthenes with factorization over the sieved primes.
//!
//! The sieve is built once (single-threaded) and is immutable afterwards;
//! every query is read-only, so a `&PrimeSieve` can be shared freely across
//! threads. The default limit of 10^7 covers every desk-scale sum in this
//! crate.

use crate::error::{Error, Result};

/// Default sieve limit, configurable through `sieve_limit`.
pub const DEFAULT_SIEVE_LIMIT: u64 = 10_000_000;

pub struct PrimeSieve {
    limit: u64,
    /// Bit n set iff n is prime, n <= limit.
    bits: Vec<u64>,
    /// Ascending list of all primes <= limit; first element is 2.
    primes: Vec<u64>,
}

impl PrimeSieve {
    /// Sieve all primes up to and including `limit` (`limit >= 2`).
    pub fn new(limit: u64) -> Self {
        assert!(limit >= 2, "sieve limit must be at least 2");
        let n = limit as usize;
        let words = n / 64 + 1;
        let mut bits = vec![u64::MAX; words];
        let clear = |bits: &mut [u64], i: usize| bits[i / 64] &= !(1u64 << (i % 64));
        let get = |bits: &[u64], i: usize| bits[i / 64] >> (i % 64) & 1 == 1;
        clear(&mut bits, 0);
        clear(&mut bits, 1);
        let mut p = 2usize;
        while p * p <= n {
            if get(&bits, p) {
                let mut m = p * p;
                while m <= n {
                    clear(&mut bits, m);
                    m += p;
                }
            }
            p += 1;
        }
        let mut primes = Vec::new();
        for i in 2..=n {
            if get(&bits, i) {
                primes.push(i as u64);
            }
        }
        PrimeSieve {
            limit,
            bits,
            primes,
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Primality lookup. Panics if `n > limit`; range checks on user input
    /// belong to the callers.
    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(
            n <= self.limit,
            "is_prime({n}) beyond sieve limit {}",
            self.limit
        );
        self.bits[(n / 64) as usize] >> (n % 64) & 1 == 1
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Ascending slice of all primes p <= x.
    pub fn primes_up_to(&self, x: u64) -> Result<&[u64]> {
        if x > self.limit {
            return Err(Error::SieveLimitExceeded {
                argument: "x",
                value: x,
                limit: self.limit,
            });
        }
        let end = self.primes.partition_point(|&p| p <= x);
        Ok(&self.primes[..end])
    }

    /// Prime factorization `n = prod p_i^{e_i}` with `p_i` ascending.
    ///
    /// Requires `n <= limit^2`: trial division by sieved primes up to
    /// `sqrt(n)` leaves either 1 or a single prime cofactor.
    pub fn factorize(&self, n: u64) -> Result<Vec<(u64, u32)>> {
        if n == 0 {
            return Err(Error::invalid("cannot factorize 0"));
        }
        if let Some(sq) = self.limit.checked_mul(self.limit) {
            if n > sq {
                return Err(Error::SieveLimitExceeded {
                    argument: "n",
                    value: n,
                    limit: self.limit,
                });
            }
        }
        let mut rest = n;
        let mut out = Vec::new();
        for &p in &self.primes {
            if p * p > rest {
                break;
            }
            if rest % p == 0 {
                let mut e = 0u32;
                while rest % p == 0 {
                    rest /= p;
                    e += 1;
                }
                out.push((p, e));
            }
        }
        if rest > 1 {
            out.push((rest, 1));
        }
        Ok(out)
    }

    /// Euler's totient via factorization.
    pub fn euler_phi(&self, n: u64) -> Result<u64> {
        let mut phi = n;
        for (p, _) in self.factorize(n)? {
            phi = phi / p * (p - 1);
        }
        Ok(phi)
    }
}
