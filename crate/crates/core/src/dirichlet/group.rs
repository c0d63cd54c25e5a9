//! The full character group mod q and individual Dirichlet characters.
//!
//! q is decomposed by CRT into prime-power factors. Each odd p^e factor is
//! cyclic with a primitive-root generator; 2^e contributes nothing (e = 1),
//! the generator -1 (e = 2), or the pair (-1, 5) (e >= 3). A character is an
//! exponent vector over these generators, and its value at n is the exact
//! root of unity e(r/L) with L the group exponent — floats appear only at
//! the evaluation boundary, so orthogonality and quadratic-order tests are
//! exact integer arithmetic.
//!
//! Enumeration order is lexicographic on exponent vectors (factors ascending
//! by prime; within the 2^e factor the generator -1 precedes 5), so sweeps
//! are reproducible.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported modulus; dlog tables are O(q), desk scale is well below.
pub const MAX_MODULUS: u64 = 1_000_000;

pub(crate) struct GenData {
    /// Multiplicative order of the generator.
    pub order: u64,
    /// L / order, the exponent rescaling into the group-exponent root.
    pub scaled: u64,
    /// CRT lift of the generator to (Z/q)^x (1 mod the complementary part).
    pub global_residue: u64,
    /// Discrete log base this generator, indexed by residue mod p^e;
    /// u32::MAX marks entries outside the cyclic piece.
    pub dlog: Vec<u32>,
}

pub(crate) struct FactorData {
    pub prime: u64,
    pub exp: u32,
    pub modulus: u64,
    pub gens: Vec<GenData>,
}

pub(crate) struct GroupInner {
    pub q: u64,
    pub phi: u64,
    /// Exponent of the group: lcm of all generator orders.
    pub exponent: u64,
    pub factors: Vec<FactorData>,
    /// e(r / exponent) for 0 <= r < exponent.
    pub unit: Vec<Complex64>,
}

/// The character group mod q (q >= 3), cheap to clone.
#[derive(Clone)]
pub struct CharacterGroup {
    inner: Arc<GroupInner>,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn factorize_small(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Smallest primitive root mod p^e for odd prime p; the classical lift: a
/// primitive root g mod p works mod p^e unless g^{p-1} = 1 mod p^2, in which
/// case g + p does.
fn primitive_root_odd(p: u64, e: u32) -> u64 {
    let prime_divisors: Vec<u64> = factorize_small(p - 1).into_iter().map(|(q, _)| q).collect();
    let g = (2..p)
        .find(|&g| {
            prime_divisors
                .iter()
                .all(|&q| powmod(g, (p - 1) / q, p) != 1)
        })
        .expect("primitive root exists mod every odd prime");
    if e == 1 {
        return g;
    }
    if powmod(g, p - 1, p * p) == 1 {
        g + p
    } else {
        g
    }
}

/// x with x = a mod m1 and x = 1 mod m2, for coprime m1, m2.
fn crt_lift(a: u64, m1: u64, m2: u64) -> u64 {
    if m2 == 1 {
        return a % m1;
    }
    // x = 1 + m2 * t, t = (a - 1) * m2^{-1} mod m1.
    let inv = powmod_inverse(m2 % m1, m1);
    let diff = (a % m1 + m1 - 1) % m1;
    let t = (diff as u128 * inv as u128 % m1 as u128) as u64;
    1 + m2 * t
}

/// Modular inverse by extended Euclid for coprime arguments.
fn powmod_inverse(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let qt = old_r / r;
        (old_r, r) = (r, old_r - qt * r);
        (old_s, s) = (s, old_s - qt * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i128) as u64
}

fn build_dlog(modulus: u64, gen: u64, order: u64, coset: Option<(u64, u64)>) -> Vec<u32> {
    // coset = (element, its order) for the second factor of a C2 x C_{2^{e-2}}
    // split; filled by the caller for 2^e with e >= 3.
    let mut dlog = vec![u32::MAX; modulus as usize];
    match coset {
        None => {
            let mut x = 1u64;
            for i in 0..order {
                dlog[x as usize] = i as u32;
                x = (x as u128 * gen as u128 % modulus as u128) as u64;
            }
        }
        Some((rep, rep_order)) => {
            for s in 0..rep_order {
                let base = powmod(rep, s, modulus);
                let mut x = base;
                for i in 0..order {
                    if dlog[x as usize] == u32::MAX {
                        dlog[x as usize] = i as u32;
                    }
                    x = (x as u128 * gen as u128 % modulus as u128) as u64;
                }
            }
        }
    }
    dlog
}

impl CharacterGroup {
    pub fn new(q: u64) -> Result<Self> {
        if q < 3 {
            return Err(Error::InvalidModulus {
                q,
                requirement: "q >= 3",
            });
        }
        if q > MAX_MODULUS {
            return Err(Error::InvalidModulus {
                q,
                requirement: "q <= 10^6 (dlog tables are O(q))",
            });
        }
        let mut factors = Vec::new();
        for (p, e) in factorize_small(q) {
            let modulus = p.pow(e);
            let cofactor = q / modulus;
            let mut gens = Vec::new();
            if p == 2 {
                if e == 2 {
                    // (Z/4)^x = {1, 3}, generated by -1.
                    gens.push((modulus - 1, 2u64));
                } else if e >= 3 {
                    gens.push((modulus - 1, 2u64));
                    gens.push((5u64, modulus / 4));
                }
                // e == 1: trivial unit group, no generators.
            } else {
                let g = primitive_root_odd(p, e);
                let order = modulus / p * (p - 1);
                gens.push((g, order));
            }
            let gen_data: Vec<GenData> = match (p, e) {
                (2, e) if e >= 3 => {
                    let minus_one = modulus - 1;
                    let five_order = modulus / 4;
                    // dlog base 5 over the full unit group via the -1 coset;
                    // dlog base -1 is the coset indicator.
                    let dlog5 = build_dlog(modulus, 5, five_order, Some((minus_one, 2)));
                    let mut dlog_sign = vec![u32::MAX; modulus as usize];
                    for s in 0..2u64 {
                        for i in 0..five_order {
                            let x = powmod(minus_one, s, modulus) as u128
                                * powmod(5, i, modulus) as u128
                                % modulus as u128;
                            dlog_sign[x as usize] = s as u32;
                        }
                    }
                    vec![
                        GenData {
                            order: 2,
                            scaled: 0,
                            global_residue: crt_lift(minus_one, modulus, cofactor),
                            dlog: dlog_sign,
                        },
                        GenData {
                            order: five_order,
                            scaled: 0,
                            global_residue: crt_lift(5, modulus, cofactor),
                            dlog: dlog5,
                        },
                    ]
                }
                _ => gens
                    .into_iter()
                    .map(|(g, order)| GenData {
                        order,
                        scaled: 0,
                        global_residue: crt_lift(g, modulus, cofactor),
                        dlog: build_dlog(modulus, g, order, None),
                    })
                    .collect(),
            };
            factors.push(FactorData {
                prime: p,
                exp: e,
                modulus,
                gens: gen_data,
            });
        }
        let phi: u64 = factors
            .iter()
            .flat_map(|f| f.gens.iter().map(|g| g.order))
            .product();
        let exponent = factors
            .iter()
            .flat_map(|f| f.gens.iter().map(|g| g.order))
            .fold(1u64, lcm);
        for f in factors.iter_mut() {
            for g in f.gens.iter_mut() {
                g.scaled = exponent / g.order;
            }
        }
        let unit: Vec<Complex64> = (0..exponent)
            .map(|r| Complex64::from_polar(1.0, TAU * r as f64 / exponent as f64))
            .collect();
        Ok(CharacterGroup {
            inner: Arc::new(GroupInner {
                q,
                phi,
                exponent,
                factors,
                unit,
            }),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.inner.q
    }

    /// Number of characters, phi(q).
    pub fn order(&self) -> u64 {
        self.inner.phi
    }

    /// Exponent of the group (lcm of the generator orders).
    pub fn exponent(&self) -> u64 {
        self.inner.exponent
    }

    /// Orders of the generators in canonical order.
    pub fn generator_orders(&self) -> Vec<u64> {
        self.inner
            .factors
            .iter()
            .flat_map(|f| f.gens.iter().map(|g| g.order))
            .collect()
    }

    /// Generators as residues mod q, in canonical order.
    pub fn generator_residues(&self) -> Vec<u64> {
        self.inner
            .factors
            .iter()
            .flat_map(|f| f.gens.iter().map(|g| g.global_residue))
            .collect()
    }

    pub fn character(&self, exponents: &[u64]) -> Result<DirichletCharacter> {
        let orders = self.generator_orders();
        if exponents.len() != orders.len() {
            return Err(Error::invalid(format!(
                "expected {} exponents for q = {}, got {}",
                orders.len(),
                self.inner.q,
                exponents.len()
            )));
        }
        for (k, d) in exponents.iter().zip(&orders) {
            if k >= d {
                return Err(Error::invalid(format!(
                    "exponent {k} out of range for generator of order {d}"
                )));
            }
        }
        Ok(DirichletCharacter::new(
            self.inner.clone(),
            exponents.to_vec(),
        ))
    }

    /// Character at position `index` in the canonical lexicographic
    /// enumeration (first generator most significant).
    pub fn character_by_index(&self, index: u64) -> Result<DirichletCharacter> {
        if index >= self.inner.phi {
            return Err(Error::invalid(format!(
                "character index {index} out of range; phi({}) = {}",
                self.inner.q, self.inner.phi
            )));
        }
        let orders = self.generator_orders();
        let mut exps = vec![0u64; orders.len()];
        let mut rest = index;
        for (slot, d) in exps.iter_mut().zip(&orders).rev() {
            *slot = rest % d;
            rest /= d;
        }
        Ok(DirichletCharacter::new(self.inner.clone(), exps))
    }

    /// All phi(q) characters in canonical order.
    pub fn characters(&self) -> impl Iterator<Item = DirichletCharacter> + '_ {
        (0..self.inner.phi).map(move |i| self.character_by_index(i).expect("index in range"))
    }

    /// The primitive characters (the set X_q^*), canonical order.
    pub fn primitive_characters(&self) -> Vec<DirichletCharacter> {
        self.characters().filter(|c| c.is_primitive()).collect()
    }

    pub fn principal(&self) -> DirichletCharacter {
        let n = self.generator_orders().len();
        DirichletCharacter::new(self.inner.clone(), vec![0; n])
    }

    pub(crate) fn inner(&self) -> &GroupInner {
        &self.inner
    }
}

/// A Dirichlet character mod q, identified by its exponent vector on the
/// group generators. Evaluation is exact root-of-unity arithmetic with a
/// float view at the boundary.
#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<GroupInner>,
    exponents: Vec<u64>,
    conductor: u64,
}

impl DirichletCharacter {
    fn new(group: Arc<GroupInner>, exponents: Vec<u64>) -> Self {
        let conductor = conductor_of(&group, &exponents);
        DirichletCharacter {
            group,
            exponents,
            conductor,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.group.q
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Position in the canonical enumeration.
    pub fn index(&self) -> u64 {
        let orders: Vec<u64> = self
            .group
            .factors
            .iter()
            .flat_map(|f| f.gens.iter().map(|g| g.order))
            .collect();
        let mut idx = 0u64;
        for (k, d) in self.exponents.iter().zip(&orders) {
            idx = idx * d + k;
        }
        idx
    }

    /// Smallest f | q such that the character is induced by a character
    /// mod f; computed structurally factor by factor.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.group.q
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&k| k == 0)
    }

    /// True iff chi^2 is principal (the principal character itself counts).
    pub fn is_quadratic(&self) -> bool {
        self.exponents
            .iter()
            .zip(self.orders())
            .all(|(&k, d)| (2 * k) % d == 0)
    }

    /// chi(-1) = +1 (even) or -1 (odd).
    pub fn is_even(&self) -> bool {
        let (num, _) = self
            .eval_exact(self.group.q - 1)
            .expect("-1 is a unit mod q");
        num == 0
    }

    /// The conjugate character chi-bar.
    pub fn conjugate(&self) -> DirichletCharacter {
        let exps: Vec<u64> = self
            .exponents
            .iter()
            .zip(self.orders())
            .map(|(&k, d)| if k == 0 { 0 } else { d - k })
            .collect();
        DirichletCharacter::new(self.group.clone(), exps)
    }

    fn orders(&self) -> impl Iterator<Item = u64> + '_ {
        self.group
            .factors
            .iter()
            .flat_map(|f| f.gens.iter().map(|g| g.order))
    }

    /// Exact value as a root of unity: chi(n) = e(num/den), or None when
    /// gcd(n, q) > 1 (value 0).
    pub fn eval_exact(&self, n: u64) -> Option<(u64, u64)> {
        let ell = self.group.exponent;
        let mut r = 0u64;
        let mut gen_idx = 0usize;
        for f in &self.group.factors {
            let residue = n % f.modulus;
            for g in &f.gens {
                let a = g.dlog[residue as usize];
                if a == u32::MAX {
                    return None;
                }
                let k = self.exponents[gen_idx];
                gen_idx += 1;
                if k != 0 {
                    // (k a mod order) rescaled into the common root order L.
                    let local = (k as u128 * a as u128 % g.order as u128) as u64;
                    r = (r + local * g.scaled) % ell;
                }
            }
            if f.gens.is_empty() && f.prime == 2 && residue % 2 == 0 {
                // 2^1 factor: even n is not a unit.
                return None;
            }
        }
        Some((r, ell))
    }

    /// Float value; exact zeros off the unit group.
    #[inline]
    pub fn eval(&self, n: u64) -> Complex64 {
        match self.eval_exact(n) {
            None => Complex64::new(0.0, 0.0),
            Some((r, _)) => self.group.unit[r as usize],
        }
    }
}

fn v_adic(p: u64, mut n: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 && n > 0 {
        n /= p;
        v += 1;
    }
    v
}

fn conductor_of(group: &GroupInner, exponents: &[u64]) -> u64 {
    let mut conductor = 1u64;
    let mut gen_idx = 0usize;
    for f in &group.factors {
        let ks: Vec<u64> = f
            .gens
            .iter()
            .map(|_| {
                let k = exponents[gen_idx];
                gen_idx += 1;
                k
            })
            .collect();
        let local = if f.prime == 2 {
            match f.exp {
                0 | 1 => 1,
                2 => {
                    if ks[0] == 0 {
                        1
                    } else {
                        4
                    }
                }
                e => {
                    let (k_sign, k_five) = (ks[0], ks[1]);
                    if k_five != 0 {
                        // Trivial on 5^{2^{c-2}} iff c >= e - v2(k_five).
                        1u64 << (e - v_adic(2, k_five))
                    } else if k_sign != 0 {
                        4
                    } else {
                        1
                    }
                }
            }
        } else {
            let k = ks[0];
            if k == 0 {
                1
            } else {
                let d = f.gens[0].order;
                let char_order = d / gcd(d, k);
                f.prime.pow(1 + v_adic(f.prime, char_order))
            }
        };
        conductor *= local;
    }
    conductor
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        assert_eq!(CharacterGroup::new(5).unwrap().order(), 4);
        let g8 = CharacterGroup::new(8).unwrap();
        assert_eq!(g8.order(), 4);
        assert_eq!(g8.generator_orders(), vec![2, 2]);
        assert_eq!(CharacterGroup::new(45).unwrap().order(), 24);
        assert!(CharacterGroup::new(2).is_err());
        assert!(CharacterGroup::new(0).is_err());
    }

    #[test]
    fn character_count_and_distinctness() {
        for q in 3..=60u64 {
            let g = CharacterGroup::new(q).unwrap();
            let mut value_tables: Vec<Vec<Option<(u64, u64)>>> = Vec::new();
            for chi in g.characters() {
                let table: Vec<_> = (0..q).map(|n| chi.eval_exact(n)).collect();
                assert!(
                    !value_tables.contains(&table),
                    "duplicate character, q = {q}"
                );
                value_tables.push(table);
            }
            assert_eq!(value_tables.len() as u64, g.order());
        }
    }

    #[test]
    fn exact_multiplicativity() {
        for q in [5u64, 8, 9, 12, 16, 21, 24, 40, 45] {
            let g = CharacterGroup::new(q).unwrap();
            for chi in g.characters() {
                for m in 1..=(2 * q) {
                    for n in 1..=(2 * q) {
                        let lhs = chi.eval_exact(m * n);
                        let rhs = match (chi.eval_exact(m), chi.eval_exact(n)) {
                            (Some((a, l)), Some((b, _))) => Some(((a + b) % l, l)),
                            _ => None,
                        };
                        assert_eq!(lhs, rhs, "q={q} m={m} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn values_zero_iff_common_factor_and_unit_modulus() {
        for q in [6u64, 8, 15, 45] {
            let g = CharacterGroup::new(q).unwrap();
            for chi in g.characters() {
                for n in 0..3 * q {
                    let v = chi.eval(n);
                    if gcd(n, q) > 1 {
                        assert_eq!(v, Complex64::new(0.0, 0.0));
                    } else {
                        assert!((v.norm() - 1.0).abs() < 1e-14);
                    }
                    // Periodicity mod q.
                    assert_eq!(chi.eval_exact(n), chi.eval_exact(n + q));
                }
            }
        }
    }

    /// Reference conductor: smallest f | q with chi trivial on units = 1 mod f.
    fn brute_conductor(chi: &DirichletCharacter) -> u64 {
        let q = chi.modulus();
        (1..=q)
            .filter(|f| q % f == 0)
            .find(|&f| {
                (1..=q)
                    .filter(|&n| n % f == 1 % f && gcd(n, q) == 1)
                    .all(|n| chi.eval_exact(n) == Some((0, chi.eval_exact(1).unwrap().1)))
            })
            .expect("q itself always works")
    }

    #[test]
    fn conductor_matches_brute_force() {
        for q in 3..=72u64 {
            let g = CharacterGroup::new(q).unwrap();
            for chi in g.characters() {
                assert_eq!(
                    chi.conductor(),
                    brute_conductor(&chi),
                    "q = {q}, exponents = {:?}",
                    chi.exponents()
                );
            }
        }
    }

    #[test]
    fn conductor_fixed_cases() {
        let g5 = CharacterGroup::new(5).unwrap();
        assert_eq!(g5.principal().conductor(), 1);
        let nonprincipal: Vec<_> = g5.characters().filter(|c| !c.is_principal()).collect();
        assert_eq!(nonprincipal.len(), 3);
        assert!(nonprincipal.iter().all(|c| c.conductor() == 5));
        assert_eq!(g5.primitive_characters().len(), 3);

        // The quadratic character mod 9 is induced from mod 3.
        let g9 = CharacterGroup::new(9).unwrap();
        let quad = g9
            .characters()
            .find(|c| c.is_quadratic() && !c.is_principal())
            .unwrap();
        assert_eq!(quad.conductor(), 3);
        assert!(!quad.is_primitive());
    }

    #[test]
    fn quadratic_flag_and_parity() {
        let g8 = CharacterGroup::new(8).unwrap();
        for chi in g8.characters() {
            assert!(chi.is_quadratic()); // (Z/8)^x has exponent 2
        }
        // chi_8 = kronecker(8, .) is the even primitive character mod 8.
        let chi8 = g8
            .characters()
            .find(|c| c.is_primitive() && c.is_even())
            .unwrap();
        for n in (1..40).step_by(2) {
            let k = crate::arith::kronecker(8, n as i64);
            let v = chi8.eval(n);
            assert!((v.re - k as f64).abs() < 1e-14 && v.im.abs() < 1e-14);
        }
    }

    #[test]
    fn conjugate_inverts_values() {
        let g = CharacterGroup::new(35).unwrap();
        for chi in g.characters() {
            let bar = chi.conjugate();
            for n in 1..35 {
                match (chi.eval_exact(n), bar.eval_exact(n)) {
                    (Some((a, l)), Some((b, _))) => assert_eq!((a + b) % l, 0),
                    (None, None) => {}
                    _ => panic!("support mismatch"),
                }
            }
        }
    }

    #[test]
    fn index_roundtrip() {
        let g = CharacterGroup::new(45).unwrap();
        for (i, chi) in g.characters().enumerate() {
            assert_eq!(chi.index(), i as u64);
            let again = g.character_by_index(i as u64).unwrap();
            assert_eq!(again.exponents(), chi.exponents());
        }
        assert!(g.character_by_index(24).is_err());
    }
}
