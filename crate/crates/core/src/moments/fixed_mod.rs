//! The fixed-modulus moment sum S_m(q, Y; f): over characters mod q, the
//! 2m-th power of |sum_{n<=Y} chi(n) lambda_f(n) Phi_U(n/Y)|.
//!
//! Inner sums are accumulated once per character in ascending n with
//! compensated summation; the character loop is chunk-parallel with a
//! deterministic ordered merge, so results are independent of thread count.

use std::time::Instant;

use crate::dirichlet::CharacterGroup;
use crate::eigenform::EigenformTable;
use crate::error::{Error, Result};
use crate::moments::kernel::SmoothingKernel;
use crate::moments::parallel::run_chunked;
use crate::moments::report::{MomentFamily, MomentReport};
use crate::summation::{KahanComplex, KahanSum};

const CHUNK: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharacterSet {
    /// X_q^*, the object of the moment bounds.
    Primitive,
    /// All characters mod q — the diagnostic mode with an exact
    /// orthogonality closed form at m = 1, Y < q.
    All,
}

/// Constant-free envelope phi(q) Y^m (log q)^{(m-1)^2}.
pub fn fixed_mod_envelope(phi: u64, q: u64, y: u64, m: f64) -> f64 {
    phi as f64 * (y as f64).powf(m) * (q as f64).ln().powf((m - 1.0) * (m - 1.0))
}

pub fn moment_fixed_mod(
    q: u64,
    y: u64,
    m: f64,
    table: &EigenformTable,
    kernel: Option<&SmoothingKernel>,
    set: CharacterSet,
    threads: usize,
) -> Result<MomentReport> {
    Ok(moment_fixed_mod_many(q, y, &[m], table, kernel, set, threads)?.remove(0))
}

/// One report per moment order; the inner character sums are computed once
/// and shared — the 2m-th power is a cheap postprocess on the squared
/// magnitudes.
pub fn moment_fixed_mod_many(
    q: u64,
    y: u64,
    orders: &[f64],
    table: &EigenformTable,
    kernel: Option<&SmoothingKernel>,
    set: CharacterSet,
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
    if y == 0 || y > q {
        return Err(Error::invalid(format!(
            "inner length must satisfy 1 <= Y <= q, got Y = {y}, q = {q}"
        )));
    }
    if table.n_max() < y {
        return Err(Error::TableTooSmall {
            needed: y,
            available: table.n_max(),
        });
    }
    let group = CharacterGroup::new(q)?;
    let characters: Vec<_> = match set {
        CharacterSet::Primitive => group.primitive_characters(),
        CharacterSet::All => group.characters().collect(),
    };
    // lambda_f(n) Phi_U(n/Y), shared by every character.
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

    // Squared inner-sum magnitudes, one per character, in canonical order.
    let chunks = run_chunked(characters.len(), CHUNK, threads, |range| {
        let mut norms = Vec::with_capacity(range.len());
        for chi in &characters[range] {
            let mut inner = KahanComplex::new();
            for (n, &w) in weights.iter().enumerate().skip(1) {
                if w == 0.0 {
                    continue;
                }
                let v = chi.eval(n as u64);
                if v.re != 0.0 || v.im != 0.0 {
                    inner.add(v * w);
                }
            }
            norms.push(inner.value().norm_sqr());
        }
        norms
    });
    let family = match set {
        CharacterSet::Primitive => MomentFamily::FixedMod,
        CharacterSet::All => MomentFamily::FixedModAllChars,
    };
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
                family,
                q,
                y,
                m,
                kernel.map(|k| k.u()),
                characters.len() as u64,
                total.value(),
                fixed_mod_envelope(group.order(), q, y, m),
                elapsed,
            )
        })
        .collect();
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use std::sync::OnceLock;

    fn table() -> &'static EigenformTable {
        static TABLE: OnceLock<EigenformTable> = OnceLock::new();
        TABLE.get_or_init(|| EigenformTable::build(2_000).unwrap())
    }

    #[test]
    fn tiny_case_matches_hand_expansion() {
        // q = 5, Y = 3, m = 1 over the 3 primitive characters, expanded
        // directly from character values.
        let report =
            moment_fixed_mod(5, 3, 1.0, table(), None, CharacterSet::Primitive, 1).unwrap();
        let group = CharacterGroup::new(5).unwrap();
        let mut expected = 0.0;
        for chi in group.primitive_characters() {
            let mut s = Complex64::new(0.0, 0.0);
            for n in 1..=3u64 {
                s += chi.eval(n) * table().lambda(n);
            }
            expected += s.norm_sqr();
        }
        assert!((report.measured - expected).abs() <= 1e-12 * expected.abs());
        assert_eq!(report.count, 3);
        assert_eq!(report.family, MomentFamily::FixedMod);
    }

    #[test]
    fn orthogonality_closed_form_all_characters() {
        // m = 1, Y < q, all characters: phi(q) * sum_{n<=Y, (n,q)=1} lambda^2.
        for (q, y) in [(7u64, 5u64), (12, 11), (45, 30)] {
            let report = moment_fixed_mod(q, y, 1.0, table(), None, CharacterSet::All, 1).unwrap();
            let group = CharacterGroup::new(q).unwrap();
            let direct: f64 = (1..=y)
                .filter(|&n| gcd(n, q) == 1)
                .map(|n| table().lambda(n) * table().lambda(n))
                .sum();
            let expected = group.order() as f64 * direct;
            assert!(
                (report.measured - expected).abs() <= 1e-9 * expected.abs(),
                "q={q} y={y}: {} vs {expected}",
                report.measured
            );
        }
    }

    #[test]
    fn zero_eigenvalues_give_zero_moment() {
        let zero = EigenformTable::from_tau(100, vec![0i128; 101]);
        let report = moment_fixed_mod(7, 6, 2.0, &zero, None, CharacterSet::Primitive, 1).unwrap();
        assert_eq!(report.measured, 0.0);
    }

    #[test]
    fn shared_inner_sums_match_single_calls() {
        let many = moment_fixed_mod_many(
            45,
            40,
            &[1.0, 2.0, 3.5],
            table(),
            None,
            CharacterSet::Primitive,
            2,
        )
        .unwrap();
        for report in &many {
            let single =
                moment_fixed_mod(45, 40, report.m, table(), None, CharacterSet::Primitive, 1)
                    .unwrap();
            assert_eq!(report.measured.to_bits(), single.measured.to_bits());
        }
    }

    #[test]
    fn thread_count_invariance() {
        let kernel = SmoothingKernel::new(6.0).unwrap();
        let one = moment_fixed_mod(
            101,
            101,
            2.5,
            table(),
            Some(&kernel),
            CharacterSet::Primitive,
            1,
        )
        .unwrap();
        let four = moment_fixed_mod(
            101,
            101,
            2.5,
            table(),
            Some(&kernel),
            CharacterSet::Primitive,
            4,
        )
        .unwrap();
        assert_eq!(one.measured.to_bits(), four.measured.to_bits());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(moment_fixed_mod(5, 6, 1.0, table(), None, CharacterSet::Primitive, 1).is_err());
        assert!(moment_fixed_mod(5, 0, 1.0, table(), None, CharacterSet::Primitive, 1).is_err());
        assert!(moment_fixed_mod(5, 3, 0.0, table(), None, CharacterSet::Primitive, 1).is_err());
        assert!(
            moment_fixed_mod(5_000, 4_000, 1.0, table(), None, CharacterSet::Primitive, 1).is_err()
        );
    }

    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    }
}
