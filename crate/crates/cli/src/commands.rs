//! Subcommand implementations. Each returns a `Table`; rendering and IO stay
//! in the front end so identical invocations produce byte-identical files.

use std::path::Path;

use hecke_lab::arith::PrimeSieve;
use hecke_lab::dirichlet::{CharacterGroup, DirichletCharacter};
use hecke_lab::eigenform::{cache, EigenformTable};
use hecke_lab::lfunc::{default_cutoff, l_twisted, log_l_majorant, MajorantVariant};
use hecke_lab::moments::{
    fit_exponent, moment_fixed_mod_many, moment_quadratic_many, verify_lemma_prsum,
    verify_prime_cancellation, CancellationVariant, CharacterSet, FitAxis, MomentFamily,
    MomentReport, SmoothingKernel,
};
use hecke_lab::Complex64;
use hecke_lab::{Error, Result};

use crate::config::RunConfig;
use crate::output::{Cell, Table};

pub const MOMENT_COLUMNS: [&str; 9] = [
    "family", "q_or_X", "Y", "m", "U", "count", "measured", "envelope", "ratio",
];

fn build_table(cfg: &RunConfig, needed: u64) -> Result<EigenformTable> {
    let n = cfg.eigenform_n.max(needed);
    cache::load_or_build(cfg.cache_dir.as_deref(), n)
}

fn exponents_string(chi: &DirichletCharacter) -> String {
    chi.exponents()
        .iter()
        .map(|k| k.to_string())
        .collect::<Vec<_>>()
        .join(":")
}

fn select_characters(
    group: &CharacterGroup,
    index: Option<u64>,
    mut keep: impl FnMut(&DirichletCharacter) -> bool,
) -> Result<Vec<DirichletCharacter>> {
    match index {
        Some(i) => {
            let chi = group.character_by_index(i)?;
            if !keep(&chi) {
                return Err(Error::InvalidArgument(format!(
                    "character index {i} mod {} is outside the accepted set for this command",
                    group.modulus()
                )));
            }
            Ok(vec![chi])
        }
        None => Ok(group.characters().filter(|c| keep(c)).collect()),
    }
}

pub fn eigenvalues(cfg: &RunConfig, n: u64) -> Result<Table> {
    if n == 0 {
        return Err(Error::InvalidArgument("need n >= 1".into()));
    }
    let table = build_table(cfg, n)?;
    let mut out = Table::new(vec!["n", "tau", "lambda"]);
    for i in 1..=n {
        out.push(vec![
            Cell::UInt(i),
            Cell::Int(table.tau(i)),
            Cell::Float(table.lambda(i)),
        ]);
    }
    Ok(out)
}

pub fn characters(q: u64) -> Result<Table> {
    let group = CharacterGroup::new(q)?;
    let mut out = Table::new(vec![
        "q",
        "index",
        "exponents",
        "conductor",
        "primitive",
        "quadratic",
        "parity",
    ]);
    for chi in group.characters() {
        out.push(vec![
            Cell::UInt(q),
            Cell::UInt(chi.index()),
            Cell::Str(exponents_string(&chi)),
            Cell::UInt(chi.conductor()),
            Cell::Bool(chi.is_primitive()),
            Cell::Bool(chi.is_quadratic()),
            Cell::Str(if chi.is_even() { "even" } else { "odd" }.into()),
        ]);
    }
    Ok(out)
}

pub fn lvalues(
    cfg: &RunConfig,
    q: u64,
    t: f64,
    index: Option<u64>,
    cutoff: Option<u64>,
) -> Result<Table> {
    let group = CharacterGroup::new(q)?;
    let chis = select_characters(&group, index, |c| c.is_primitive())?;
    if chis.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "no primitive characters mod {q}"
        )));
    }
    let wanted = cutoff.unwrap_or(((30.0 * q as f64 * (1.0 + t.abs())).ceil()) as u64);
    let table = build_table(cfg, wanted)?;
    let m = cutoff.unwrap_or_else(|| default_cutoff(q, t, table.n_max()));
    let s = Complex64::new(0.5, t);
    let mut out = Table::new(vec![
        "q",
        "index",
        "t",
        "cutoff",
        "re",
        "im",
        "abs",
        "error_estimate",
    ]);
    for chi in &chis {
        let v = l_twisted(s, chi, &table, m)?;
        out.push(vec![
            Cell::UInt(q),
            Cell::UInt(chi.index()),
            Cell::Float(t),
            Cell::UInt(m),
            Cell::Float(v.value.re),
            Cell::Float(v.value.im),
            Cell::Float(v.value.norm()),
            Cell::Float(v.error_estimate),
        ]);
    }
    Ok(out)
}

fn parse_majorant_variant(s: &str) -> Result<MajorantVariant> {
    match s {
        "general" => Ok(MajorantVariant::General),
        "nonquadratic" => Ok(MajorantVariant::NonQuadratic),
        "quadratic" => Ok(MajorantVariant::Quadratic),
        other => Err(Error::InvalidArgument(format!(
            "variant must be general|nonquadratic|quadratic, got {other}"
        ))),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn majorant(
    cfg: &RunConfig,
    q: u64,
    t: f64,
    x: f64,
    a_cap: f64,
    variant: &str,
    index: Option<u64>,
) -> Result<Table> {
    let variant = parse_majorant_variant(variant)?;
    let group = CharacterGroup::new(q)?;
    let chis = select_characters(&group, index, |c| {
        c.is_primitive() && (variant != MajorantVariant::NonQuadratic || !c.is_quadratic())
    })?;
    let table = build_table(cfg, x.floor() as u64)?;
    let sieve_limit = (x.floor() as u64).max(1_000).min(cfg.sieve_limit);
    if x.floor() as u64 > cfg.sieve_limit {
        return Err(Error::SieveLimitExceeded {
            argument: "x",
            value: x.floor() as u64,
            limit: cfg.sieve_limit,
        });
    }
    let sieve = PrimeSieve::new(sieve_limit);
    let mut out = Table::new(vec![
        "q",
        "index",
        "t",
        "x",
        "a",
        "variant",
        "prime_term",
        "prime_square_term",
        "scale_term",
        "total",
    ]);
    let variant_name = match variant {
        MajorantVariant::General => "general",
        MajorantVariant::NonQuadratic => "nonquadratic",
        MajorantVariant::Quadratic => "quadratic",
    };
    for chi in &chis {
        let parts = log_l_majorant(chi, t, x, a_cap, &sieve, &table, variant)?;
        out.push(vec![
            Cell::UInt(q),
            Cell::UInt(chi.index()),
            Cell::Float(t),
            Cell::Float(x),
            Cell::Float(a_cap),
            Cell::Str(variant_name.into()),
            Cell::Float(parts.prime_sum),
            Cell::Float(parts.prime_square_sum),
            Cell::Float(parts.scale_term),
            Cell::Float(parts.total()),
        ]);
    }
    Ok(out)
}

fn moment_row(report: &MomentReport) -> Vec<Cell> {
    vec![
        Cell::Str(report.family.as_str().into()),
        Cell::UInt(report.modulus),
        Cell::UInt(report.y),
        Cell::Float(report.m),
        Cell::OptFloat(report.kernel_u),
        Cell::UInt(report.count),
        Cell::Float(report.measured),
        Cell::Float(report.envelope),
        Cell::Float(report.ratio),
    ]
}

fn kernel_for(u: Option<f64>, smooth: bool, modulus: u64) -> Result<Option<SmoothingKernel>> {
    match (u, smooth) {
        (Some(u), _) => Ok(Some(SmoothingKernel::new(u)?)),
        (None, true) => Ok(Some(SmoothingKernel::new(SmoothingKernel::default_u(
            modulus,
        ))?)),
        (None, false) => Ok(None),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn moments_fixed(
    cfg: &RunConfig,
    qs: &[u64],
    y: Option<u64>,
    orders: &[f64],
    u: Option<f64>,
    smooth: bool,
    mode: &str,
) -> Result<Table> {
    let set = match mode {
        "primitive" => CharacterSet::Primitive,
        "all" => CharacterSet::All,
        other => {
            return Err(Error::InvalidArgument(format!(
                "mode must be primitive|all, got {other}"
            )))
        }
    };
    let needed = qs
        .iter()
        .map(|&q| y.unwrap_or(q))
        .max()
        .ok_or_else(|| Error::InvalidArgument("need at least one q".into()))?;
    let table = build_table(cfg, needed)?;
    let mut out = Table::new(MOMENT_COLUMNS.to_vec());
    for &q in qs {
        let y_q = y.unwrap_or(q);
        let kernel = kernel_for(u, smooth, q)?;
        let reports =
            moment_fixed_mod_many(q, y_q, orders, &table, kernel.as_ref(), set, cfg.threads)?;
        eprintln!(
            "moments-fixed q={q} Y={y_q}: {:.3}s",
            reports[0].elapsed.as_secs_f64()
        );
        for report in &reports {
            out.push(moment_row(report));
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
pub fn moments_quad(
    cfg: &RunConfig,
    xs: &[u64],
    y: Option<u64>,
    orders: &[f64],
    u: Option<f64>,
    smooth: bool,
    k: u32,
    eps: f64,
) -> Result<Table> {
    let needed = xs
        .iter()
        .map(|&x| y.unwrap_or(x))
        .max()
        .ok_or_else(|| Error::InvalidArgument("need at least one X".into()))?;
    let table = build_table(cfg, needed)?;
    let mut out = Table::new(MOMENT_COLUMNS.to_vec());
    for &x in xs {
        let y_x = y.unwrap_or(x);
        let kernel = kernel_for(u, smooth, x)?;
        let reports =
            moment_quadratic_many(x, y_x, orders, &table, kernel.as_ref(), k, eps, cfg.threads)?;
        eprintln!(
            "moments-quad X={x} Y={y_x}: {:.3}s",
            reports[0].elapsed.as_secs_f64()
        );
        for report in &reports {
            out.push(moment_row(report));
        }
    }
    Ok(out)
}

pub fn verify_prsum(cfg: &RunConfig, x: u64, n: u64, k: f64, u: f64) -> Result<Table> {
    let kernel = SmoothingKernel::new(u)?;
    let sieve = PrimeSieve::new(cfg.sieve_limit);
    let record = verify_lemma_prsum(x, n, k, &kernel, &sieve)?;
    let mut out = Table::new(vec!["x", "n", "k", "u", "lhs", "main_term", "error"]);
    out.push(vec![
        Cell::UInt(x),
        Cell::UInt(n),
        Cell::Float(k),
        Cell::Float(u),
        Cell::Float(record.lhs),
        Cell::Float(record.main_term),
        Cell::Float(record.error),
    ]);
    Ok(out)
}

pub fn verify_cancel(
    cfg: &RunConfig,
    q: u64,
    index: Option<u64>,
    t0: f64,
    x: f64,
    variant: &str,
) -> Result<Table> {
    let variant = match variant {
        "plain" => CancellationVariant::Plain,
        "symsquare" => CancellationVariant::SymSquare,
        other => {
            return Err(Error::InvalidArgument(format!(
                "variant must be plain|symsquare, got {other}"
            )))
        }
    };
    let group = CharacterGroup::new(q)?;
    let chis = select_characters(&group, index, |c| {
        variant == CancellationVariant::SymSquare || !c.is_principal()
    })?;
    let bound = x.floor() as u64;
    if bound > cfg.sieve_limit {
        return Err(Error::SieveLimitExceeded {
            argument: "x",
            value: bound,
            limit: cfg.sieve_limit,
        });
    }
    let sieve = PrimeSieve::new(bound.max(1_000).min(cfg.sieve_limit));
    let table = match variant {
        CancellationVariant::SymSquare => build_table(cfg, bound)?,
        CancellationVariant::Plain => build_table(cfg, 1)?,
    };
    let variant_name = match variant {
        CancellationVariant::Plain => "plain",
        CancellationVariant::SymSquare => "symsquare",
    };
    let mut out = Table::new(vec![
        "q", "index", "t0", "x", "variant", "sum_re", "sum_im", "abs", "envelope", "ratio",
    ]);
    for chi in &chis {
        let rec = verify_prime_cancellation(chi, t0, x, &sieve, &table, variant)?;
        out.push(vec![
            Cell::UInt(q),
            Cell::UInt(chi.index()),
            Cell::Float(t0),
            Cell::Float(x),
            Cell::Str(variant_name.into()),
            Cell::Float(rec.sum.re),
            Cell::Float(rec.sum.im),
            Cell::Float(rec.sum.norm()),
            Cell::Float(rec.envelope),
            Cell::Float(rec.ratio),
        ]);
    }
    Ok(out)
}

/// Parse a moments CSV (as emitted by moments-fixed / moments-quad) back
/// into reports for fitting.
pub fn parse_moment_csv(text: &str) -> Result<Vec<MomentReport>> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidArgument("empty moments file".into()))?;
    if header != MOMENT_COLUMNS.join(",") {
        return Err(Error::InvalidArgument(format!(
            "unexpected header `{header}`; expected `{}`",
            MOMENT_COLUMNS.join(",")
        )));
    }
    let mut reports = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != MOMENT_COLUMNS.len() {
            return Err(Error::InvalidArgument(format!(
                "row {}: expected {} fields",
                i + 2,
                MOMENT_COLUMNS.len()
            )));
        }
        let bad = |what: &str| Error::InvalidArgument(format!("row {}: bad {what}", i + 2));
        let family = match fields[0] {
            "fixed_mod" => MomentFamily::FixedMod,
            "fixed_mod_all" => MomentFamily::FixedModAllChars,
            "quadratic" => MomentFamily::Quadratic,
            _ => return Err(bad("family")),
        };
        let measured: f64 = fields[6].parse().map_err(|_| bad("measured"))?;
        let envelope: f64 = fields[7].parse().map_err(|_| bad("envelope"))?;
        reports.push(MomentReport {
            family,
            modulus: fields[1].parse().map_err(|_| bad("q_or_X"))?,
            y: fields[2].parse().map_err(|_| bad("Y"))?,
            m: fields[3].parse().map_err(|_| bad("m"))?,
            kernel_u: if fields[4].is_empty() {
                None
            } else {
                Some(fields[4].parse().map_err(|_| bad("U"))?)
            },
            count: fields[5].parse().map_err(|_| bad("count"))?,
            measured,
            envelope,
            ratio: fields[8].parse().map_err(|_| bad("ratio"))?,
            elapsed: std::time::Duration::ZERO,
        });
    }
    Ok(reports)
}

pub fn fit(input: &Path, axis: Option<&str>) -> Result<Table> {
    let text = std::fs::read_to_string(input)?;
    let reports = parse_moment_csv(&text)?;
    if reports.is_empty() {
        return Err(Error::InvalidArgument("no rows to fit".into()));
    }
    let axis = match axis {
        Some("logq") => FitAxis::LogQ,
        Some("logx") => FitAxis::LogX,
        Some(other) => {
            return Err(Error::InvalidArgument(format!(
                "axis must be logq|logx, got {other}"
            )))
        }
        None => match reports[0].family {
            MomentFamily::Quadratic => FitAxis::LogX,
            _ => FitAxis::LogQ,
        },
    };
    let result = fit_exponent(&reports, axis)?;
    let mut out = Table::new(vec![
        "axis",
        "family",
        "m",
        "points",
        "slope",
        "intercept",
        "r_squared",
    ]);
    out.push(vec![
        Cell::Str(match axis {
            FitAxis::LogQ => "logq".into(),
            FitAxis::LogX => "logx".into(),
        }),
        Cell::Str(reports[0].family.as_str().into()),
        Cell::Float(reports[0].m),
        Cell::UInt(result.points as u64),
        Cell::Float(result.slope),
        Cell::Float(result.intercept),
        Cell::Float(result.r_squared),
    ]);
    Ok(out)
}
