//! Divisor counts, the Euler weight A(d) = prod_{p|d}(1 - 1/p), and the
//! enumerator of odd square-free integers (the quadratic-twist family index).

use crate::arith::sieve::PrimeSieve;
use crate::error::{Error, Result};

/// Exact divisor count d(n).
pub fn divisor_count(sieve: &PrimeSieve, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid("divisor_count(0) rejected"));
    }
    Ok(sieve
        .factorize(n)?
        .iter()
        .map(|&(_, e)| e as u64 + 1)
        .product())
}

/// A reduced rational with 64-bit numerator and denominator. Sufficient for
/// the A(d) weights at desk scale (d up to the sieve limit).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational64 {
    num: i64,
    den: i64,
}

impl Rational64 {
    fn new_reduced(num: i64, den: i64) -> Self {
        assert!(den > 0);
        let g = gcd(num.unsigned_abs(), den as u64) as i64;
        Rational64 {
            num: num / g,
            den: den / g,
        }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

/// The weight A(d) = prod_{p|d}(1 - 1/p) as an exact reduced rational.
/// A(1) = 1 (empty product); A(d) > 0 for every d >= 1.
pub fn euler_weight_a(sieve: &PrimeSieve, d: u64) -> Result<Rational64> {
    if d == 0 {
        return Err(Error::invalid("euler_weight_a(0) rejected"));
    }
    let mut num: i64 = 1;
    let mut den: i64 = 1;
    for (p, _) in sieve.factorize(d)? {
        // Radical of d <= d <= 10^7, so the products stay far inside i64.
        num *= (p - 1) as i64;
        den *= p as i64;
    }
    Ok(Rational64::new_reduced(num, den))
}

/// Ascending enumerator of odd square-free d <= limit, the index set of the
/// quadratic family 8d.
pub struct SquareFreeOddEnumerator {
    limit: u64,
    /// squarefree[i] records whether i is square-free (computed for odd i).
    squarefree: Vec<bool>,
    next: u64,
}

impl SquareFreeOddEnumerator {
    pub fn new(limit: u64) -> Self {
        let mut squarefree = vec![true; limit as usize + 1];
        let mut p = 3u64;
        while p * p <= limit {
            let step = p * p;
            let mut m = step;
            while m <= limit {
                squarefree[m as usize] = false;
                m += step;
            }
            p += 2;
        }
        SquareFreeOddEnumerator {
            limit,
            squarefree,
            next: 1,
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Collect the whole family.
    pub fn to_vec(limit: u64) -> Vec<u64> {
        SquareFreeOddEnumerator::new(limit).collect()
    }
}

impl Iterator for SquareFreeOddEnumerator {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.next <= self.limit {
            let d = self.next;
            self.next += 2;
            if self.squarefree[d as usize] {
                return Some(d);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_squarefree(n: u64) -> bool {
        let mut d = 2;
        while d * d <= n {
            if n % (d * d) == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn divisor_counts() {
        let sieve = PrimeSieve::new(1_000);
        assert_eq!(divisor_count(&sieve, 1).unwrap(), 1);
        assert_eq!(divisor_count(&sieve, 4).unwrap(), 3);
        // Brute-force divisor enumeration for a spread of n.
        for n in 1..=600u64 {
            let brute = (1..=n).filter(|d| n % d == 0).count() as u64;
            assert_eq!(divisor_count(&sieve, n).unwrap(), brute, "d({n})");
        }
        assert_eq!(divisor_count(&sieve, 60).unwrap(), 12);
        assert!(divisor_count(&sieve, 0).is_err());
    }

    #[test]
    fn euler_weight_values() {
        let sieve = PrimeSieve::new(1_000);
        let one = euler_weight_a(&sieve, 1).unwrap();
        assert_eq!((one.num(), one.den()), (1, 1));
        let w15 = euler_weight_a(&sieve, 15).unwrap();
        assert_eq!((w15.num(), w15.den()), (8, 15));
        // Reduction matters: d = 21 gives 12/21 = 4/7.
        let w21 = euler_weight_a(&sieve, 21).unwrap();
        assert_eq!((w21.num(), w21.den()), (4, 7));
        for &p in sieve.primes_up_to(100).unwrap() {
            let w = euler_weight_a(&sieve, p).unwrap();
            assert_eq!((w.num(), w.den()), ((p - 1) as i64, p as i64));
            assert!(w.as_f64() > 0.0);
        }
        // A(d) depends only on the radical.
        let a12 = euler_weight_a(&sieve, 12).unwrap();
        let a6 = euler_weight_a(&sieve, 6).unwrap();
        assert_eq!(a12, a6);
    }

    #[test]
    fn squarefree_enumerator_matches_brute_force() {
        let brute: Vec<u64> = (1..=1_000u64)
            .filter(|&d| d % 2 == 1 && brute_squarefree(d))
            .collect();
        let fast = SquareFreeOddEnumerator::to_vec(1_000);
        assert_eq!(fast, brute);
        assert!(fast.windows(2).all(|w| w[0] < w[1]));
        // Small prefix is the familiar list; 9 is excluded.
        assert_eq!(&fast[..6], &[1, 3, 5, 7, 11, 13]);
    }
}
