//! Shifted-moment envelope products: the constant-free right-hand sides of
//! the fixed-modulus and quadratic-family moment bounds, in two evaluation
//! modes — exact zeta/sym^2 factors at 1 + i dt + 1/log q, or the piecewise
//! g1/g2 surrogates.
//!
//! Envelopes are upper-bound surrogates: at the piecewise boundaries where
//! two branch definitions overlap, the minimum of the adjacent branch values
//! is taken, which keeps whichever branch is sharper and makes g1/g2
//! well-defined functions.

use num_complex::Complex64;

use crate::eigenform::EigenformTable;
use crate::error::{Error, Result};
use crate::lfunc::sym_square::SymSquareSeries;
use crate::lfunc::zeta::zeta;

/// The tuple (a_1..a_k, t_1..t_k, A) parametrizing shifted moments and
/// majorants: positive exponents, real shifts with |t_j| <= modulus^A.
#[derive(Debug, Clone)]
pub struct ShiftConfig {
    exponents: Vec<f64>,
    shifts: Vec<f64>,
    growth_exponent: f64,
}

impl ShiftConfig {
    pub fn new(exponents: Vec<f64>, shifts: Vec<f64>, growth_exponent: f64) -> Result<Self> {
        if exponents.is_empty() || exponents.len() != shifts.len() {
            return Err(Error::invalid(
                "shift config needs matching nonempty exponent and shift lists",
            ));
        }
        if exponents.iter().any(|&a| !(a > 0.0)) {
            return Err(Error::invalid("all exponents a_j must be positive"));
        }
        if !(growth_exponent > 0.0) {
            return Err(Error::invalid("growth exponent A must be positive"));
        }
        Ok(ShiftConfig {
            exponents,
            shifts,
            growth_exponent,
        })
    }

    pub fn k(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[f64] {
        &self.exponents
    }

    pub fn shifts(&self) -> &[f64] {
        &self.shifts
    }

    pub fn growth_exponent(&self) -> f64 {
        self.growth_exponent
    }

    /// a = a_1 + ... + a_k.
    pub fn exponent_sum(&self) -> f64 {
        self.exponents.iter().sum()
    }

    pub fn exponent_square_sum(&self) -> f64 {
        self.exponents.iter().map(|a| a * a).sum()
    }

    /// |t_j| <= modulus^A, enforced at use sites.
    pub fn check_shifts(&self, modulus: f64) -> Result<()> {
        let cap = modulus.powf(self.growth_exponent);
        for &t in &self.shifts {
            if t.abs() > cap {
                return Err(Error::invalid(format!(
                    "shift |{t}| exceeds modulus^A = {cap}"
                )));
            }
        }
        Ok(())
    }
}

/// h(n) = (1/2) sum_m a_m n^{-i t_m}.
pub fn shift_weight_h(n: u64, cfg: &ShiftConfig) -> Complex64 {
    let ln_n = (n as f64).ln();
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, t) in cfg.exponents.iter().zip(&cfg.shifts) {
        acc += a * Complex64::from_polar(1.0, -t * ln_n);
    }
    acc / 2.0
}

/// First envelope surrogate. Branches: log q on [0, 1/log q] and beyond e^q;
/// 1/x on [1/log q, 10]; log log x on [10, e^q]. Requires log q > 1.
pub fn g1(x: f64, logq: f64) -> Result<f64> {
    check_g_args(x, logq)?;
    let q = logq.exp();
    let mut best = f64::INFINITY;
    if x <= 1.0 / logq || x.ln() >= q {
        best = best.min(logq);
    }
    if (1.0 / logq..=10.0).contains(&x) {
        best = best.min(1.0 / x);
    }
    if x >= 10.0 && x.ln() <= q {
        best = best.min(x.ln().ln());
    }
    Ok(best)
}

/// Second envelope surrogate: 1 up to e^e, log log x up to e^q, log q beyond.
pub fn g2(x: f64, logq: f64) -> Result<f64> {
    check_g_args(x, logq)?;
    let q = logq.exp();
    let e_e = std::f64::consts::E.exp();
    let mut best = f64::INFINITY;
    if x <= e_e {
        best = best.min(1.0);
    }
    if x >= e_e && x.ln() <= q {
        best = best.min(x.ln().ln());
    }
    if x.ln() >= q {
        best = best.min(logq);
    }
    Ok(best)
}

fn check_g_args(x: f64, logq: f64) -> Result<()> {
    if !(x >= 0.0) {
        return Err(Error::invalid(format!("g functions need x >= 0, got {x}")));
    }
    if !(logq > 1.0) {
        return Err(Error::invalid(format!(
            "g functions need log q > 1, got {logq}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvelopeMode {
    /// |zeta| and |L(sym^2)| factors at 1 + i dt + 1/log modulus.
    Exact,
    /// g1/g2 surrogate factors.
    GFunction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    /// phi(q), or X for the quadratic family.
    FamilyCount,
    /// log modulus raised to (a_1^2 + ... + a_k^2)/4.
    LogPower,
    ZetaAbs,
    SymSquareAbs,
    G1,
    G2,
}

/// One multiplicand of the envelope: `value` raised to `exponent`;
/// `argument` records the shift combination (or modulus) it came from.
#[derive(Debug, Clone, Copy)]
pub struct EnvelopeFactor {
    pub kind: FactorKind,
    pub argument: f64,
    pub exponent: f64,
    pub value: f64,
}

/// Natural log of the envelope product together with its factor breakdown;
/// the breakdown always reassembles to `log_envelope`.
#[derive(Debug, Clone)]
pub struct EnvelopeValue {
    pub log_envelope: f64,
    pub factors: Vec<EnvelopeFactor>,
}

impl EnvelopeValue {
    pub fn reassemble(&self) -> f64 {
        self.factors.iter().map(|f| f.exponent * f.value.ln()).sum()
    }

    fn from_factors(factors: Vec<EnvelopeFactor>) -> Self {
        let log_envelope = factors.iter().map(|f| f.exponent * f.value.ln()).sum();
        EnvelopeValue {
            log_envelope,
            factors,
        }
    }
}

fn phi_by_trial_division(q: u64) -> u64 {
    let mut n = q;
    let mut phi = q;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            phi = phi / d * (d - 1);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        phi = phi / n * (n - 1);
    }
    phi
}

/// Internal truncation for the sym^2 factors inside envelopes; envelope
/// tolerances are orders of magnitude looser than this buys.
const ENVELOPE_SYM_LIMIT: u64 = 20_000;

struct FactorEvaluator<'a> {
    logm: f64,
    mode: EnvelopeMode,
    sym: Option<SymSquareSeries>,
    _table: &'a EigenformTable,
}

impl<'a> FactorEvaluator<'a> {
    fn new(modulus: u64, table: &'a EigenformTable, mode: EnvelopeMode) -> Result<Self> {
        let sym = match mode {
            EnvelopeMode::Exact => Some(SymSquareSeries::new(
                table,
                table.n_max().min(ENVELOPE_SYM_LIMIT),
            )?),
            EnvelopeMode::GFunction => None,
        };
        Ok(FactorEvaluator {
            logm: (modulus as f64).ln(),
            mode,
            sym,
            _table: table,
        })
    }

    /// Push the pair of factors attached to a shift combination dt with the
    /// given exponents on the zeta-like and sym^2-like parts.
    fn push_pair(
        &self,
        factors: &mut Vec<EnvelopeFactor>,
        dt: f64,
        zeta_exponent: f64,
        sym_exponent: f64,
    ) -> Result<()> {
        match self.mode {
            EnvelopeMode::Exact => {
                let s = Complex64::new(1.0 + 1.0 / self.logm, dt);
                factors.push(EnvelopeFactor {
                    kind: FactorKind::ZetaAbs,
                    argument: dt,
                    exponent: zeta_exponent,
                    value: zeta(s)?.norm(),
                });
                factors.push(EnvelopeFactor {
                    kind: FactorKind::SymSquareAbs,
                    argument: dt,
                    exponent: sym_exponent,
                    value: self.sym.as_ref().unwrap().eval(s)?.value.norm(),
                });
            }
            EnvelopeMode::GFunction => {
                factors.push(EnvelopeFactor {
                    kind: FactorKind::G1,
                    argument: dt.abs(),
                    exponent: zeta_exponent,
                    value: g1(dt.abs(), self.logm)?,
                });
                factors.push(EnvelopeFactor {
                    kind: FactorKind::G2,
                    argument: dt.abs(),
                    exponent: sym_exponent,
                    value: g2(dt.abs(), self.logm)?,
                });
            }
        }
        Ok(())
    }
}

/// Fixed-modulus envelope: phi(q) (log q)^{sum a_j^2/4} times, over j < l,
/// |zeta * L(sym^2)|^{a_j a_l / 2} at 1 + i(t_j - t_l) + 1/log q (or the
/// g1 g2 surrogate product).
pub fn envelope_fixed_mod(
    cfg: &ShiftConfig,
    q: u64,
    table: &EigenformTable,
    mode: EnvelopeMode,
) -> Result<EnvelopeValue> {
    if q < 3 {
        return Err(Error::InvalidModulus {
            q,
            requirement: "q >= 3 so that log log q > 0",
        });
    }
    cfg.check_shifts(q as f64)?;
    let eval = FactorEvaluator::new(q, table, mode)?;
    let mut factors = vec![
        EnvelopeFactor {
            kind: FactorKind::FamilyCount,
            argument: q as f64,
            exponent: 1.0,
            value: phi_by_trial_division(q) as f64,
        },
        EnvelopeFactor {
            kind: FactorKind::LogPower,
            argument: q as f64,
            exponent: cfg.exponent_square_sum() / 4.0,
            value: (q as f64).ln(),
        },
    ];
    let (a, t) = (cfg.exponents(), cfg.shifts());
    for j in 0..cfg.k() {
        for l in (j + 1)..cfg.k() {
            let ex = a[j] * a[l] / 2.0;
            eval.push_pair(&mut factors, t[j] - t[l], ex, ex)?;
        }
    }
    Ok(EnvelopeValue::from_factors(factors))
}

/// Quadratic-family envelope: X (log X)^{sum a_j^2/4} times the difference
/// and sum factors over j < l, and the diagonal factors at 2 t_j with
/// exponents a_j^2/4 - a_j/2 on the zeta part and a_j^2/4 + a_j/2 on the
/// sym^2 part.
pub fn envelope_quadratic(
    cfg: &ShiftConfig,
    x: u64,
    table: &EigenformTable,
    mode: EnvelopeMode,
) -> Result<EnvelopeValue> {
    if x < 3 {
        return Err(Error::InvalidModulus {
            q: x,
            requirement: "X >= 3 so that log log X > 0",
        });
    }
    cfg.check_shifts(x as f64)?;
    let eval = FactorEvaluator::new(x, table, mode)?;
    let mut factors = vec![
        EnvelopeFactor {
            kind: FactorKind::FamilyCount,
            argument: x as f64,
            exponent: 1.0,
            value: x as f64,
        },
        EnvelopeFactor {
            kind: FactorKind::LogPower,
            argument: x as f64,
            exponent: cfg.exponent_square_sum() / 4.0,
            value: (x as f64).ln(),
        },
    ];
    let (a, t) = (cfg.exponents(), cfg.shifts());
    for j in 0..cfg.k() {
        for l in (j + 1)..cfg.k() {
            let ex = a[j] * a[l] / 2.0;
            eval.push_pair(&mut factors, t[j] - t[l], ex, ex)?;
            eval.push_pair(&mut factors, t[j] + t[l], ex, ex)?;
        }
    }
    for j in 0..cfg.k() {
        let zeta_ex = a[j] * a[j] / 4.0 - a[j] / 2.0;
        let sym_ex = a[j] * a[j] / 4.0 + a[j] / 2.0;
        eval.push_pair(&mut factors, 2.0 * t[j], zeta_ex, sym_ex)?;
    }
    Ok(EnvelopeValue::from_factors(factors))
}
