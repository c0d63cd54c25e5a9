//! Cross-module character checks: primitive counts against brute force over
//! a wide modulus range, and the Kronecker family (8d|.) identified inside
//! the character group of conductor 8d.

use hecke_lab::arith::kronecker;
use hecke_lab::dirichlet::CharacterGroup;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Brute-force primitivity: chi is induced mod f iff it is trivial on all
/// units congruent to 1 mod f.
fn brute_primitive_count(q: u64) -> u64 {
    let group = CharacterGroup::new(q).unwrap();
    group
        .characters()
        .filter(|chi| {
            let trivial_on = |f: u64| {
                (1..=q)
                    .filter(|&n| n % f == 1 % f && gcd(n, q) == 1)
                    .all(|n| matches!(chi.eval_exact(n), Some((0, _))))
            };
            !(1..q).filter(|f| q % f == 0).any(trivial_on)
        })
        .count() as u64
}

#[test]
fn primitive_counts_match_brute_force_to_200() {
    for q in 3..=200u64 {
        let group = CharacterGroup::new(q).unwrap();
        let structural = group.primitive_characters().len() as u64;
        assert_eq!(structural, brute_primitive_count(q), "q = {q}");
        assert_eq!(group.characters().count() as u64, group.order());
    }
}

#[test]
fn no_primitive_characters_mod_2_mod_4_pattern() {
    // q = 2 mod 4 has no primitive characters at all.
    for q in [6u64, 10, 14, 30, 94, 198] {
        let group = CharacterGroup::new(q).unwrap();
        assert!(group.primitive_characters().is_empty(), "q = {q}");
    }
}

#[test]
fn kronecker_8d_is_a_primitive_real_character_of_conductor_8d() {
    for d in (1..=30u64).step_by(2) {
        let squarefree = (2..).take_while(|p| p * p <= d).all(|p| d % (p * p) != 0);
        if !squarefree {
            continue;
        }
        let modulus = 8 * d;
        let group = CharacterGroup::new(modulus).unwrap();
        // Identify the character by matching values on the group generators.
        let orders = group.generator_orders();
        let residues = group.generator_residues();
        let mut exponents = Vec::new();
        for (g, order) in residues.iter().zip(&orders) {
            let target = kronecker(modulus as i64, *g as i64);
            assert!(target == 1 || target == -1);
            exponents.push(if target == 1 { 0 } else { order / 2 });
        }
        let chi = group.character(&exponents).unwrap();
        assert!(chi.is_quadratic());
        assert!(chi.is_primitive(), "d = {d}: conductor {}", chi.conductor());
        assert_eq!(chi.conductor(), modulus);
        for n in 0..=3 * modulus {
            let v = chi.eval(n);
            let want = kronecker(modulus as i64, n as i64) as f64;
            assert!(
                (v.re - want).abs() < 1e-12 && v.im.abs() < 1e-12,
                "d = {d}, n = {n}"
            );
        }
    }
}
