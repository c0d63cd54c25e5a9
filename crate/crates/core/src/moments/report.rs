//! One row of an empirical-moment sweep: parameters, measured sum,
//! constant-free theoretical envelope, and their ratio.

use std::time::Duration;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentFamily {
    /// S_m over the primitive characters mod q, the moment bounds' object.
    FixedMod,
    /// Diagnostic mode over all characters mod q; admits an exact
    /// orthogonality oracle at m = 1.
    FixedModAllChars,
    /// T_m over the quadratic family 8d, d odd square-free.
    Quadratic,
}

impl MomentFamily {
    pub fn as_str(&self) -> &'static str {
        match self {
            MomentFamily::FixedMod => "fixed_mod",
            MomentFamily::FixedModAllChars => "fixed_mod_all",
            MomentFamily::Quadratic => "quadratic",
        }
    }
}

#[derive(Debug, Clone)]
pub struct MomentReport {
    pub family: MomentFamily,
    /// q for the fixed-modulus family, X for the quadratic one.
    pub modulus: u64,
    pub y: u64,
    pub m: f64,
    /// Smoothing parameter if an inner kernel was applied.
    pub kernel_u: Option<f64>,
    /// Characters (or discriminants) summed.
    pub count: u64,
    pub measured: f64,
    pub envelope: f64,
    pub ratio: f64,
    /// Wall-clock build time; diagnostic only, never serialized.
    pub elapsed: Duration,
}

impl MomentReport {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn new(
        family: MomentFamily,
        modulus: u64,
        y: u64,
        m: f64,
        kernel_u: Option<f64>,
        count: u64,
        measured: f64,
        envelope: f64,
        elapsed: Duration,
    ) -> Self {
        MomentReport {
            family,
            modulus,
            y,
            m,
            kernel_u,
            count,
            measured,
            envelope,
            ratio: measured / envelope,
            elapsed,
        }
    }
}
