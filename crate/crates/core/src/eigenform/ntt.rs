//! Exact big-coefficient polynomial squaring by number-theoretic transforms.
//!
//! The dense O(N^2) squarings in `series` are fine at the default table size
//! but not for tables reaching n ~ 10^6 (needed by the deep prime sums).
//! Here the same squarings run mod three NTT-friendly 62-bit primes with
//! Montgomery arithmetic, and the integer coefficients are recovered by
//! Garner's algorithm into i128. The three-prime modulus (~2^186) dwarfs the
//! |tau(n)| < 2 n^6 bound enforced by the table builder, so reconstruction
//! is exact.
//!
//! The primes are found at first use: the largest three p = k * 2^23 + 1
//! below 2^62, certified by deterministic Miller-Rabin. Transform lengths up
//! to 2^23 are supported, i.e. series up to ~4 * 10^6 coefficients.

use crate::error::{Error, Result};
use std::sync::OnceLock;

const TWO_ADICITY: u32 = 23;
pub const MAX_NTT_LEN: usize = 1 << TWO_ADICITY;

/// Montgomery arithmetic mod an odd prime p < 2^62.
#[derive(Debug, Clone, Copy)]
struct Montgomery {
    p: u64,
    neg_inv: u64, // -p^{-1} mod 2^64
    r2: u64,      // 2^128 mod p
    one: u64,     // 2^64 mod p
}

impl Montgomery {
    fn new(p: u64) -> Self {
        debug_assert!(p % 2 == 1 && p < 1 << 62);
        // Newton iteration doubles correct low bits each round.
        let mut inv = p;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        debug_assert_eq!(p.wrapping_mul(inv), 1);
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Montgomery {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
            one: r,
        }
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let t2 = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if t2 >= self.p {
            t2 - self.p
        } else {
            t2
        }
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn to_mont(&self, a: u64) -> u64 {
        self.redc(a as u128 * self.r2 as u128)
    }

    fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = self.one;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn powmod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 (the 12-witness set is exact below
/// 3.3 * 10^24).
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Debug, Clone, Copy)]
struct NttPrime {
    mg: Montgomery,
    /// Generator of the full multiplicative group mod p.
    generator: u64,
}

impl NttPrime {
    fn new(p: u64) -> Self {
        let factors = prime_factors_u64(p - 1);
        let g = (2u64..)
            .find(|&g| factors.iter().all(|&q| powmod_u64(g, (p - 1) / q, p) != 1))
            .expect("every prime has a primitive root");
        NttPrime {
            mg: Montgomery::new(p),
            generator: g,
        }
    }
}

fn ntt_primes() -> &'static [NttPrime; 3] {
    static PRIMES: OnceLock<[NttPrime; 3]> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut found = Vec::with_capacity(3);
        let mut k = (1u64 << 39) - 1;
        while found.len() < 3 {
            let p = (k << TWO_ADICITY) + 1;
            if is_prime_u64(p) {
                found.push(NttPrime::new(p));
            }
            k -= 1;
        }
        [found[0], found[1], found[2]]
    })
}

fn ntt_in_place(a: &mut [u64], mg: &Montgomery, root_mont: u64) {
    let n = a.len();
    debug_assert!(n.is_power_of_two());
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let wlen = mg.pow(root_mont, (n / len) as u64);
        let half = len / 2;
        for block in a.chunks_exact_mut(len) {
            let mut w = mg.one;
            let (lo, hi) = block.split_at_mut(half);
            for (u, v) in lo.iter_mut().zip(hi.iter_mut()) {
                let x = *u;
                let y = mg.mul(*v, w);
                *u = mg.add(x, y);
                *v = mg.sub(x, y);
                w = mg.mul(w, wlen);
            }
        }
        len <<= 1;
    }
}

/// Residues of the squared polynomial mod one prime, Montgomery stripped.
fn square_mod(a: &[i64], size: usize, prime: &NttPrime) -> Vec<u64> {
    let mg = &prime.mg;
    let p = mg.p;
    let mut buf = vec![0u64; size];
    for (slot, &c) in buf.iter_mut().zip(a.iter()) {
        *slot = mg.to_mont(c.rem_euclid(p as i64) as u64);
    }
    let root = mg.pow(mg.to_mont(prime.generator), (p - 1) / size as u64);
    ntt_in_place(&mut buf, mg, root);
    for x in buf.iter_mut() {
        *x = mg.mul(*x, *x);
    }
    let root_inv = mg.pow(root, size as u64 - 1);
    ntt_in_place(&mut buf, mg, root_inv);
    let size_inv = mg.pow(mg.to_mont(size as u64), p - 2);
    for x in buf.iter_mut() {
        *x = mg.from_mont(mg.mul(*x, size_inv));
    }
    buf
}

/// Exact square of the integer polynomial `a`, truncated to `out_len`
/// coefficients. Valid whenever every output coefficient lies in
/// (-2^126, 2^126); callers enforce that through their own coefficient
/// bounds.
pub fn square_poly_i128(a: &[i64], out_len: usize) -> Result<Vec<i128>> {
    assert!(!a.is_empty());
    let full = 2 * a.len() - 1;
    let size = full.next_power_of_two();
    if size > MAX_NTT_LEN {
        return Err(Error::invalid(format!(
            "NTT length {size} exceeds the 2^{TWO_ADICITY} cap"
        )));
    }
    let primes = ntt_primes();
    let r0 = square_mod(a, size, &primes[0]);
    let r1 = square_mod(a, size, &primes[1]);
    let r2 = square_mod(a, size, &primes[2]);

    let (p0, p1, p2) = (primes[0].mg.p, primes[1].mg.p, primes[2].mg.p);
    let inv_p0_mod_p1 = powmod_u64(p0 % p1, p1 - 2, p1);
    let p0p1_mod_p2 = mulmod_u64(p0 % p2, p1 % p2, p2);
    let inv_p0p1_mod_p2 = powmod_u64(p0p1_mod_p2, p2 - 2, p2);
    let p0p1 = p0 as i128 * p1 as i128;

    let out_len = out_len.min(full);
    let mut out = Vec::with_capacity(out_len);
    for i in 0..out_len {
        // Garner digits: v = d0 + p0 d1 + p0 p1 d2.
        let d0 = r0[i];
        let d1 = mulmod_u64((r1[i] + p1 - d0 % p1) % p1, inv_p0_mod_p1, p1);
        let low_mod_p2 = (d0 % p2 + mulmod_u64(p0 % p2, d1 % p2, p2)) % p2;
        let d2 = mulmod_u64((r2[i] + p2 - low_mod_p2) % p2, inv_p0p1_mod_p2, p2);
        // Center the top digit: the true value is far below p0 p1 p2 / 2.
        let d2_signed = if d2 > p2 / 2 {
            d2 as i128 - p2 as i128
        } else {
            d2 as i128
        };
        let v = p0p1
            .checked_mul(d2_signed)
            .and_then(|t| t.checked_add(p0 as i128 * d1 as i128))
            .and_then(|t| t.checked_add(d0 as i128))
            .ok_or(Error::TauOverflow { n: i as u64 + 1 })?;
        out.push(v);
    }
    Ok(out)
}

/// Coefficients of prod(1 - q^m)^24 up to degree < len via NTT squarings.
/// Same pipeline as `series::eta24_dense`, different convolution engine.
pub fn eta24_ntt(len: usize) -> Result<Vec<i128>> {
    let eta3 = super::series::eta3_sparse(len);
    // Sparse square to eta^6 stays exact in i64.
    let mut eta6 = vec![0i64; len];
    for (a, &(i, ci)) in eta3.iter().enumerate() {
        for &(j, cj) in &eta3[a..] {
            let idx = i + j;
            if idx >= len {
                break;
            }
            eta6[idx] += if i == j { ci * cj } else { 2 * ci * cj };
        }
    }
    let eta12_wide = square_poly_i128(&eta6, len)?;
    let mut eta12 = Vec::with_capacity(len);
    for (idx, &c) in eta12_wide.iter().enumerate() {
        eta12.push(i64::try_from(c).map_err(|_| Error::TauOverflow { n: idx as u64 + 1 })?);
    }
    square_poly_i128(&eta12, len)
}
