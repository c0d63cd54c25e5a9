//! Empirical verifiers: the smoothed quadratic character-sum evaluation
//! (main term vs measured error) and the GRH-conditional twisted prime-sum
//! cancellation check.

use num_complex::Complex64;

use crate::arith::{euler_weight_a, kronecker, PrimeSieve, SquareFreeOddEnumerator};
use crate::dirichlet::DirichletCharacter;
use crate::eigenform::EigenformTable;
use crate::error::{Error, Result};
use crate::moments::kernel::SmoothingKernel;
use crate::summation::{KahanComplex, KahanSum};

/// Measured lhs, predicted main term, and their difference for the smoothed
/// quadratic sum sum* A(d)^{-k} (8d|n) Phi(d/X).
#[derive(Debug, Clone, Copy)]
pub struct PrSumRecord {
    pub lhs: f64,
    pub main_term: f64,
    pub error: f64,
}

/// Evaluate both sides. The main term is nonzero only for odd square n:
/// Mellin(1) X/2 prod_{p|n}(1 + A(p)^{-k}/p)^{-1}
/// prod_{p odd}(1 - 1/p)(1 + A(p)^{-k}/p), the latter truncated at the
/// sieve limit (log-tail below (k+2)/limit).
pub fn verify_lemma_prsum(
    x: u64,
    n: u64,
    k: f64,
    kernel: &SmoothingKernel,
    sieve: &PrimeSieve,
) -> Result<PrSumRecord> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    if !(k >= 0.0) {
        return Err(Error::invalid("weight exponent k must be >= 0"));
    }
    if x < 8 {
        return Err(Error::invalid("family bound X must be at least 8"));
    }
    if x > sieve.limit() {
        return Err(Error::SieveLimitExceeded {
            argument: "X",
            value: x,
            limit: sieve.limit(),
        });
    }
    let mut lhs = KahanSum::new();
    for d in SquareFreeOddEnumerator::new(x - 1) {
        let phi = kernel.eval(d as f64 / x as f64);
        if phi == 0.0 {
            continue;
        }
        let chi = kronecker(8 * d as i64, n as i64);
        if chi == 0 {
            continue;
        }
        let weight = euler_weight_a(sieve, d)?.as_f64().powf(-k);
        lhs.add(chi as f64 * weight * phi);
    }
    let lhs = lhs.value();

    let main_term = if n % 2 == 1 && is_square(n) {
        let mellin_one = kernel.mellin(Complex64::new(1.0, 0.0))?.re;
        let mut local = 1.0f64;
        for (p, _) in sieve.factorize(n)? {
            let a_inv_k = (p as f64 / (p as f64 - 1.0)).powf(k);
            local /= 1.0 + a_inv_k / p as f64;
        }
        let mut euler = KahanSum::new(); // log of the odd-prime product
        for &p in sieve.primes() {
            if p == 2 {
                continue;
            }
            let pf = p as f64;
            let a_inv_k = (pf / (pf - 1.0)).powf(k);
            euler.add(((1.0 - 1.0 / pf) * (1.0 + a_inv_k / pf)).ln());
        }
        mellin_one * x as f64 / 2.0 * local * euler.value().exp()
    } else {
        0.0
    };
    Ok(PrSumRecord {
        lhs,
        main_term,
        error: lhs - main_term,
    })
}

fn is_square(n: u64) -> bool {
    let r = (n as f64).sqrt().round() as u64;
    r * r == n || (r + 1) * (r + 1) == n || (r.saturating_sub(1)).pow(2) == n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CancellationVariant {
    /// sum_{p<=x} chi(p) p^{-i t0} log p; needs chi non-principal.
    Plain,
    /// sum_{p<=x} chi(p) lambda_f(p^2) p^{-i t0} log p.
    SymSquare,
}

#[derive(Debug, Clone, Copy)]
pub struct CancellationRecord {
    pub sum: Complex64,
    /// sqrt(x) (log 2q(x + |t0|))^2, the GRH-conditional scale.
    pub envelope: f64,
    pub ratio: f64,
}

pub fn verify_prime_cancellation(
    chi: &DirichletCharacter,
    t0: f64,
    x: f64,
    sieve: &PrimeSieve,
    table: &EigenformTable,
    variant: CancellationVariant,
) -> Result<CancellationRecord> {
    if variant == CancellationVariant::Plain && chi.is_principal() {
        return Err(Error::PrincipalCharacter {
            context: "plain twisted prime sums do not cancel for the principal character",
        });
    }
    if !(x >= 2.0) {
        return Err(Error::invalid("x must be at least 2"));
    }
    let bound = x.floor() as u64;
    if variant == CancellationVariant::SymSquare && table.n_max() < bound {
        return Err(Error::TableTooSmall {
            needed: bound,
            available: table.n_max(),
        });
    }
    let mut acc = KahanComplex::new();
    for &p in sieve.primes_up_to(bound)? {
        let v = chi.eval(p);
        if v.re == 0.0 && v.im == 0.0 {
            continue;
        }
        let pf = p as f64;
        let ln_p = pf.ln();
        let mut term = v * Complex64::from_polar(ln_p, -t0 * ln_p);
        if variant == CancellationVariant::SymSquare {
            let lam = table.lambda(p);
            term *= lam * lam - 1.0;
        }
        acc.add(term);
    }
    let sum = acc.value();
    let q = chi.modulus() as f64;
    let envelope = x.sqrt() * (2.0 * q * (x + t0.abs())).ln().powi(2);
    Ok(CancellationRecord {
        sum,
        envelope,
        ratio: sum.norm() / envelope,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::CharacterGroup;
    use std::sync::OnceLock;

    fn sieve() -> &'static PrimeSieve {
        static SIEVE: OnceLock<PrimeSieve> = OnceLock::new();
        SIEVE.get_or_init(|| PrimeSieve::new(200_000))
    }

    fn table() -> &'static EigenformTable {
        static TABLE: OnceLock<EigenformTable> = OnceLock::new();
        TABLE.get_or_init(|| EigenformTable::build(2_000).unwrap())
    }

    #[test]
    fn even_n_vanishes_exactly() {
        let kernel = SmoothingKernel::new(8.0).unwrap();
        for n in [2u64, 4, 10, 100, 2_468] {
            let rec = verify_lemma_prsum(1_000, n, 1.0, &kernel, sieve()).unwrap();
            assert_eq!(rec.lhs, 0.0, "n = {n}");
            assert_eq!(rec.main_term, 0.0);
            assert_eq!(rec.error, 0.0);
        }
    }

    #[test]
    fn k1_infinite_product_is_one() {
        // At k = 1 each factor (1-1/p)(1 + A(p)^{-1}/p) collapses to 1, so
        // for n = 1 the main term is exactly Mellin(1) X/2.
        let kernel = SmoothingKernel::new(8.0).unwrap();
        let rec = verify_lemma_prsum(10_000, 1, 1.0, &kernel, sieve()).unwrap();
        let mellin_one = kernel.mellin(Complex64::new(1.0, 0.0)).unwrap().re;
        let expected = mellin_one * 10_000.0 / 2.0;
        assert!((rec.main_term - expected).abs() < 1e-6 * expected);
    }

    #[test]
    fn square_n_main_term_tracks_lhs() {
        // Relative error at X = 10^4 should be far below the main term.
        let kernel = SmoothingKernel::new(8.0).unwrap();
        for (n, k) in [(1u64, 0.0f64), (9, 0.0), (9, 1.0), (25, 1.0)] {
            let rec = verify_lemma_prsum(10_000, n, k, &kernel, sieve()).unwrap();
            assert!(rec.main_term > 0.0);
            assert!(
                rec.error.abs() < 0.05 * rec.main_term,
                "n={n} k={k}: lhs={} main={}",
                rec.lhs,
                rec.main_term
            );
        }
    }

    #[test]
    fn non_square_odd_n_has_zero_main_term() {
        let kernel = SmoothingKernel::new(8.0).unwrap();
        let rec = verify_lemma_prsum(5_000, 15, 1.0, &kernel, sieve()).unwrap();
        assert_eq!(rec.main_term, 0.0);
        // The oscillating lhs stays square-root small.
        assert!(rec.lhs.abs() < 64.0 * (5_000f64).sqrt());
    }

    #[test]
    fn cancellation_single_term() {
        // x = 2: the sum is chi(2) 2^{-i t0} log 2.
        let g = CharacterGroup::new(5).unwrap();
        let chi = g.character_by_index(1).unwrap();
        let rec =
            verify_prime_cancellation(&chi, 0.7, 2.0, sieve(), table(), CancellationVariant::Plain)
                .unwrap();
        assert!((rec.sum.norm() - 2f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn cancellation_stays_below_envelope() {
        let g = CharacterGroup::new(5).unwrap();
        let quad = g
            .characters()
            .find(|c| c.is_quadratic() && !c.is_principal())
            .unwrap();
        for variant in [CancellationVariant::Plain, CancellationVariant::SymSquare] {
            let rec =
                verify_prime_cancellation(&quad, 0.0, 2_000.0, sieve(), table(), variant).unwrap();
            assert!(rec.ratio < 1.0, "{variant:?}: ratio = {}", rec.ratio);
        }
    }

    #[test]
    fn cancellation_growth_stays_square_root() {
        // Trend check for the plain variant: least-squares slope of
        // log |sum| against log x over {1e3, 1e4, 1e5} stays at most 0.6
        // (square-root cancellation with log slack). The sym-square sums at
        // q = 5 cancel anomalously hard at x = 1e3, which inflates that
        // regression; for them the envelope domination at every grid point
        // is the asserted property.
        let g = CharacterGroup::new(5).unwrap();
        let quad = g
            .characters()
            .find(|c| c.is_quadratic() && !c.is_principal())
            .unwrap();
        let xs = [1e3f64, 1e4, 1e5];
        let sums: Vec<f64> = xs
            .iter()
            .map(|&x| {
                verify_prime_cancellation(
                    &quad,
                    0.0,
                    x,
                    sieve(),
                    big_table(),
                    CancellationVariant::Plain,
                )
                .unwrap()
                .sum
                .norm()
                .max(1e-12)
            })
            .collect();
        let mean_x: f64 = xs.iter().map(|x| x.ln()).sum::<f64>() / 3.0;
        let mean_y: f64 = sums.iter().map(|s| s.ln()).sum::<f64>() / 3.0;
        let slope: f64 = xs
            .iter()
            .zip(&sums)
            .map(|(x, s)| (x.ln() - mean_x) * (s.ln() - mean_y))
            .sum::<f64>()
            / xs.iter().map(|x| (x.ln() - mean_x).powi(2)).sum::<f64>();
        assert!(slope <= 0.6, "plain sums {sums:?}, slope {slope:.3}");
        for &x in &xs {
            let rec = verify_prime_cancellation(
                &quad,
                0.0,
                x,
                sieve(),
                big_table(),
                CancellationVariant::SymSquare,
            )
            .unwrap();
            assert!(
                rec.ratio < 1.0,
                "sym-square ratio at x = {x}: {}",
                rec.ratio
            );
        }
    }

    fn big_table() -> &'static EigenformTable {
        static TABLE: OnceLock<EigenformTable> = OnceLock::new();
        TABLE.get_or_init(|| EigenformTable::build(100_000).unwrap())
    }

    #[test]
    fn principal_rejected_for_plain() {
        let g = CharacterGroup::new(5).unwrap();
        let principal = g.principal();
        assert!(verify_prime_cancellation(
            &principal,
            0.0,
            100.0,
            sieve(),
            table(),
            CancellationVariant::Plain
        )
        .is_err());
        // Sym-square variant accepts it (the untwisted sum still cancels).
        assert!(verify_prime_cancellation(
            &principal,
            0.0,
            100.0,
            sieve(),
            table(),
            CancellationVariant::SymSquare
        )
        .is_ok());
    }
}
