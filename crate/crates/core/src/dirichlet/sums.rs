//! Gauss sums and character orthogonality.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::dirichlet::{CharacterGroup, DirichletCharacter};
use crate::error::{Error, Result};
use crate::summation::KahanComplex;

/// Gauss sum tau(chi) = sum_{a mod q} chi(a) e(a/q) for primitive chi;
/// |tau(chi)| = sqrt(q) holds exactly there and fails off the primitive set,
/// so imprimitive input is rejected.
pub fn gauss_sum(chi: &DirichletCharacter) -> Result<Complex64> {
    if !chi.is_primitive() {
        return Err(Error::ImprimitiveCharacter {
            conductor: chi.conductor(),
            modulus: chi.modulus(),
        });
    }
    Ok(additively_twisted_sum(chi, 1))
}

/// sum_{a mod q} chi(a) e(an/q); equals conj(chi)(n) tau(chi) for any n
/// coprime to q and primitive chi.
pub fn additively_twisted_sum(chi: &DirichletCharacter, n: u64) -> Complex64 {
    let q = chi.modulus();
    let mut acc = KahanComplex::new();
    for a in 1..q {
        let v = chi.eval(a);
        if v == Complex64::new(0.0, 0.0) {
            continue;
        }
        let phase = TAU * ((a as u128 * n as u128 % q as u128) as f64) / q as f64;
        acc.add(v * Complex64::from_polar(1.0, phase));
    }
    acc.value()
}

/// sum over all characters mod q of chi(n): exactly phi(q) when n = 1 mod q,
/// exactly 0 otherwise. Evaluated in exact integer arithmetic — per cyclic
/// factor the sum of e(k a / d) over k vanishes unless the local discrete
/// log a is 0 — so the zero is a true zero.
pub fn orthogonality_sum(group: &CharacterGroup, n: u64) -> Complex64 {
    let inner = group.inner();
    let mut product = 1u64;
    for f in &inner.factors {
        let residue = n % f.modulus;
        if f.gens.is_empty() {
            // 2^1 factor: only n odd contributes.
            if f.prime == 2 && residue % 2 == 0 {
                return Complex64::new(0.0, 0.0);
            }
            continue;
        }
        for g in &f.gens {
            let a = g.dlog[residue as usize];
            if a == u32::MAX {
                return Complex64::new(0.0, 0.0);
            }
            if a != 0 {
                return Complex64::new(0.0, 0.0);
            }
            product *= g.order;
        }
    }
    Complex64::new(product as f64, 0.0)
}
