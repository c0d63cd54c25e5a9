//! Log-log exponent fitting: regress the measured moment (normalized by
//! count * Y^m) against the envelope exponent times log log modulus. A slope
//! near or below 1 says the measured growth stays inside the theoretical
//! envelope's power of log.

use crate::error::{Error, Result};
use crate::moments::quadratic::quadratic_envelope_exponent;
use crate::moments::report::{MomentFamily, MomentReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitAxis {
    /// Fixed-modulus sweeps: abscissa (m-1)^2 log log q.
    LogQ,
    /// Quadratic sweeps: abscissa E(m,1,0) log log X.
    LogX,
}

#[derive(Debug, Clone, Copy)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points: usize,
}

pub fn fit_exponent(reports: &[MomentReport], axis: FitAxis) -> Result<FitResult> {
    if reports.len() < 3 {
        return Err(Error::invalid(format!(
            "exponent fit needs at least 3 reports, got {}",
            reports.len()
        )));
    }
    let family = reports[0].family;
    let m = reports[0].m;
    if reports.iter().any(|r| r.family != family || r.m != m) {
        return Err(Error::invalid(
            "exponent fit needs identical family and moment order across reports",
        ));
    }
    let family_matches = match axis {
        FitAxis::LogQ => family != MomentFamily::Quadratic,
        FitAxis::LogX => family == MomentFamily::Quadratic,
    };
    if !family_matches {
        return Err(Error::invalid("fit axis does not match the report family"));
    }
    let exponent = match axis {
        FitAxis::LogQ => (m - 1.0) * (m - 1.0),
        FitAxis::LogX => quadratic_envelope_exponent(m, 1, 0.0),
    };
    if exponent <= 0.0 {
        return Err(Error::invalid(
            "envelope exponent vanishes; the abscissa would be degenerate",
        ));
    }
    let points: Vec<(f64, f64)> = reports
        .iter()
        .map(|r| {
            let xi = exponent * (r.modulus as f64).ln().ln();
            let y = (r.measured / (r.count as f64 * (r.y as f64).powf(m))).ln();
            (xi, y)
        })
        .collect();
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let var_x = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum::<f64>();
    if var_x < 1e-12 {
        return Err(Error::invalid("moduli too close: abscissa has no spread"));
    }
    let cov = points
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum::<f64>();
    let slope = cov / var_x;
    let intercept = mean_y - slope * mean_x;
    let ss_tot = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum::<f64>();
    let ss_res = points
        .iter()
        .map(|p| (p.1 - (intercept + slope * p.0)).powi(2))
        .sum::<f64>();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok(FitResult {
        slope,
        intercept,
        r_squared,
        points: points.len(),
    })
}
