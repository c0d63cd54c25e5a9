//! GRH-conditional majorants for log |L(1/2 + it, f (x) chi)|: the explicit
//! prime sums of the upper-bound corollaries, returned WITHOUT the
//! unspecified O(1) constant.
//!
//! The caller-visible value is the three-piece sum: the weighted prime sum
//! over p <= x, minus half the prime-square sum, plus 2(A+1) log q / log x.
//! In the `Quadratic` variant the prime-square sum drops the character (the
//! corresponding bound majorizes log |A(d) L|, the A(d)-weighted value).
//! Acceptance sweeps fit the omitted constant empirically.

use crate::arith::PrimeSieve;
use crate::dirichlet::DirichletCharacter;
use crate::eigenform::EigenformTable;
use crate::error::{Error, Result};
use crate::summation::KahanSum;

/// The unique positive root of e^{-x} = x + x^2/2, by bisection on
/// [0.4, 0.6]; absolute error <= 1e-12. First digits 0.4912.
pub fn lambda0() -> f64 {
    let residual = |x: f64| (-x).exp() - x - x * x / 2.0;
    let (mut lo, mut hi) = (0.4f64, 0.6f64);
    debug_assert!(residual(lo) > 0.0 && residual(hi) < 0.0);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if residual(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MajorantVariant {
    /// Prime-square sum over p <= sqrt(x) with the character.
    General,
    /// Prime-square sum truncated at min(log q, sqrt(x)); valid for
    /// non-quadratic characters only.
    NonQuadratic,
    /// Quadratic-family form: prime-square sum without the character; the
    /// bounded quantity is log |A(d) L|.
    Quadratic,
}

/// The three pieces of the majorant; `total` is their sum, constant-free.
#[derive(Debug, Clone, Copy)]
pub struct MajorantParts {
    pub prime_sum: f64,
    pub prime_square_sum: f64,
    pub scale_term: f64,
}

impl MajorantParts {
    pub fn total(&self) -> f64 {
        self.prime_sum + self.prime_square_sum + self.scale_term
    }
}

/// Evaluate the majorant prime sums for chi at height t with smoothing
/// length x and growth exponent A (`a_cap`).
pub fn log_l_majorant(
    chi: &DirichletCharacter,
    t: f64,
    x: f64,
    a_cap: f64,
    sieve: &PrimeSieve,
    table: &EigenformTable,
    variant: MajorantVariant,
) -> Result<MajorantParts> {
    let q = chi.modulus();
    let qf = q as f64;
    if !(2.0..=qf).contains(&x) {
        return Err(Error::invalid(format!(
            "majorant needs 2 <= x <= q = {q}, got x = {x}"
        )));
    }
    if !(a_cap > 0.0) {
        return Err(Error::invalid("growth exponent A must be positive"));
    }
    if t.abs() > qf.powf(a_cap) {
        return Err(Error::invalid(format!("|t| = {} exceeds q^A", t.abs())));
    }
    if variant == MajorantVariant::NonQuadratic && chi.is_quadratic() {
        return Err(Error::invalid(
            "non-quadratic variant applied to a quadratic character",
        ));
    }
    let bound = x.floor() as u64;
    if table.n_max() < bound {
        return Err(Error::TableTooSmall {
            needed: bound,
            available: table.n_max(),
        });
    }
    let ln_x = x.ln();

    // Re sum_{p<=x} chi(p) lambda(p) p^{-1/2 - it - 1/log x} log(x/p)/log x.
    let mut first = KahanSum::new();
    for &p in sieve.primes_up_to(bound)? {
        let v = chi.eval(p);
        if v.re == 0.0 && v.im == 0.0 {
            continue;
        }
        let pf = p as f64;
        let ln_p = pf.ln();
        let radial = table.lambda(p) * (-(0.5 + 1.0 / ln_x) * ln_p).exp() * (ln_x - ln_p) / ln_x;
        let phase = (v * num_complex::Complex64::from_polar(1.0, -t * ln_p)).re;
        first.add(radial * phase);
    }

    // -(1/2) Re sum over the square range of chi(p^2)(lambda(p^2) - 1) p^{-1-2it}.
    let square_cut = match variant {
        MajorantVariant::General | MajorantVariant::Quadratic => x.sqrt(),
        MajorantVariant::NonQuadratic => qf.ln().min(x.sqrt()),
    };
    let mut second = KahanSum::new();
    for &p in sieve.primes_up_to(square_cut.floor() as u64)? {
        let pf = p as f64;
        let ln_p = pf.ln();
        let lam = table.lambda(p);
        // lambda(p^2) = lambda(p)^2 - 1 via the Satake relation.
        let weight = (lam * lam - 2.0) / pf;
        let phase = match variant {
            MajorantVariant::Quadratic => (-2.0 * t * ln_p).cos(),
            _ => {
                let v = chi.eval(p);
                let sq = v * v;
                if sq.re == 0.0 && sq.im == 0.0 {
                    continue;
                }
                (sq * num_complex::Complex64::from_polar(1.0, -2.0 * t * ln_p)).re
            }
        };
        second.add(weight * phase);
    }

    Ok(MajorantParts {
        prime_sum: first.value(),
        prime_square_sum: -0.5 * second.value(),
        scale_term: 2.0 * (a_cap + 1.0) * qf.ln() / ln_x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::CharacterGroup;
    use std::sync::OnceLock;

    fn table() -> &'static EigenformTable {
        static TABLE: OnceLock<EigenformTable> = OnceLock::new();
        TABLE.get_or_init(|| EigenformTable::build(20_000).unwrap())
    }

    fn sieve() -> &'static PrimeSieve {
        static SIEVE: OnceLock<PrimeSieve> = OnceLock::new();
        SIEVE.get_or_init(|| PrimeSieve::new(100_000))
    }

    #[test]
    fn lambda0_root() {
        let l = lambda0();
        assert!(l.to_string().starts_with("0.4912"), "{l}");
        let residual = (-l).exp() - l - l * l / 2.0;
        assert!(residual.abs() <= 1e-12);
        // Bracket endpoints straddle the root.
        let f = |x: f64| (-x).exp() - x - x * x / 2.0;
        assert!(f(0.4) > 0.0 && f(0.6) < 0.0);
    }

    #[test]
    fn vanishing_character_range_leaves_scale_term() {
        // Kronecker family modulus 8d = 24: chi(2) = chi(3) = 0, so at x = 3
        // both prime sums are empty and only 2(A+1) log q / log x remains.
        let g = CharacterGroup::new(24).unwrap();
        let chi = g
            .primitive_characters()
            .into_iter()
            .find(|c| c.is_quadratic() && c.is_even())
            .unwrap();
        for n in [2u64, 3] {
            assert_eq!(chi.eval(n), num_complex::Complex64::new(0.0, 0.0));
        }
        // x = 2: the only prime in range is 2 and chi(2) = 0, so both prime
        // sums are empty and the value is exactly 2(A+1) log q / log 2.
        let parts = log_l_majorant(
            &chi,
            0.0,
            2.0,
            1.0,
            sieve(),
            table(),
            MajorantVariant::General,
        )
        .unwrap();
        assert_eq!(parts.prime_sum, 0.0);
        assert_eq!(parts.prime_square_sum, -0.0);
        let expected = 4.0 * (24f64).ln() / (2f64).ln();
        assert!((parts.scale_term - expected).abs() < 1e-12);
        assert!((parts.total() - expected).abs() < 1e-12);
        // x = 3 adds p = 3, also dead for this character.
        let parts3 = log_l_majorant(
            &chi,
            0.0,
            3.0,
            1.0,
            sieve(),
            table(),
            MajorantVariant::General,
        )
        .unwrap();
        assert_eq!(parts3.prime_sum, 0.0);
        assert!((parts3.total() - 4.0 * (24f64).ln() / (3f64).ln()).abs() < 1e-12);
    }

    #[test]
    fn scale_term_at_x_equals_q() {
        // x = q makes the third term exactly 2(A+1).
        let g = CharacterGroup::new(101).unwrap();
        let chi = g.character_by_index(1).unwrap();
        let parts = log_l_majorant(
            &chi,
            0.0,
            101.0,
            1.0,
            sieve(),
            table(),
            MajorantVariant::General,
        )
        .unwrap();
        assert!((parts.scale_term - 4.0).abs() < 1e-12);
    }

    #[test]
    fn variant_preconditions() {
        let g = CharacterGroup::new(101).unwrap();
        let quad = g
            .characters()
            .find(|c| c.is_quadratic() && !c.is_principal())
            .unwrap();
        assert!(log_l_majorant(
            &quad,
            0.0,
            50.0,
            1.0,
            sieve(),
            table(),
            MajorantVariant::NonQuadratic
        )
        .is_err());
        let chi = g.character_by_index(1).unwrap();
        assert!(log_l_majorant(
            &chi,
            0.0,
            1.5,
            1.0,
            sieve(),
            table(),
            MajorantVariant::General
        )
        .is_err());
        assert!(log_l_majorant(
            &chi,
            0.0,
            200.0,
            1.0,
            sieve(),
            table(),
            MajorantVariant::General
        )
        .is_err());
        assert!(log_l_majorant(
            &chi,
            1e9,
            50.0,
            1.0,
            sieve(),
            table(),
            MajorantVariant::General
        )
        .is_err());
    }
}
