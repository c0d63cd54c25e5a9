//! The C-infinity bump Phi_U: 0 outside (0, 1), identically 1 on
//! [1/U, 1 - 1/U], glued by the standard exp(-1/x) transition. Its Mellin
//! transform is the plateau's closed form plus two transition integrals done
//! by adaptive Simpson quadrature to 1e-10 absolute.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MELLIN_TOL: f64 = 1e-10;
const MAX_DEPTH: u32 = 44;
/// Below rise(0.02) < 1e-18 the transition is numerically zero.
const TRANSITION_FLOOR: f64 = 0.02;

#[derive(Debug, Clone, Copy)]
pub struct SmoothingKernel {
    u: f64,
}

fn psi(x: f64) -> f64 {
    if x > 0.0 {
        (-1.0 / x).exp()
    } else {
        0.0
    }
}

/// Smooth 0 -> 1 transition on [0, 1]; rise(x) + rise(1 - x) = 1.
fn rise(x: f64) -> f64 {
    let a = psi(x);
    let b = psi(1.0 - x);
    if a == 0.0 {
        0.0
    } else {
        a / (a + b)
    }
}

impl SmoothingKernel {
    pub fn new(u: f64) -> Result<Self> {
        if !(u >= 4.0) {
            return Err(Error::invalid(format!("kernel needs U >= 4, got {u}")));
        }
        Ok(SmoothingKernel { u })
    }

    /// Default family parameter: q^{0.2} clamped to [4, 100].
    pub fn default_u(modulus: u64) -> f64 {
        (modulus as f64).powf(0.2).clamp(4.0, 100.0)
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 || t >= 1.0 {
            0.0
        } else if t < 1.0 / self.u {
            rise(self.u * t)
        } else if t > 1.0 - 1.0 / self.u {
            rise(self.u * (1.0 - t))
        } else {
            1.0
        }
    }

    /// Mellin transform integral_0^1 Phi_U(t) t^{s-1} dt, Re s > 0.
    pub fn mellin(&self, s: Complex64) -> Result<Complex64> {
        if s.re <= 0.0 {
            return Err(Error::invalid(format!(
                "Mellin transform evaluated at Re s = {} <= 0",
                s.re
            )));
        }
        let u = self.u;
        let lo = 1.0 / u;
        let hi = 1.0 - 1.0 / u;
        // Plateau: integral t^{s-1} = (hi^s - lo^s)/s.
        let pow = |t: f64| (s * t.ln()).exp();
        let plateau = (pow(hi) - pow(lo)) / s;
        // Rising edge on [floor/u, 1/u]; below the floor the integrand is
        // under 1e-18 * t^{Re s - 1}, far inside the tolerance budget.
        let f_lo = |t: f64| Complex64::from_polar(t.powf(s.re - 1.0), s.im * t.ln()) * rise(u * t);
        let left = adaptive_simpson(&f_lo, TRANSITION_FLOOR / u, lo, MELLIN_TOL / 2.0);
        // Falling edge on [1 - 1/u, 1 - floor/u].
        let f_hi =
            |t: f64| Complex64::from_polar(t.powf(s.re - 1.0), s.im * t.ln()) * rise(u * (1.0 - t));
        let right = adaptive_simpson(&f_hi, hi, 1.0 - TRANSITION_FLOOR / u, MELLIN_TOL / 2.0);
        Ok(plateau + left + right)
    }
}

fn simpson_slice(fa: Complex64, fm: Complex64, fb: Complex64, h: f64) -> Complex64 {
    (fa + 4.0 * fm + fb) * (h / 6.0)
}

fn adaptive_simpson<F>(f: &F, a: f64, b: f64, tol: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson_slice(fa, fm, fb, b - a);
    adapt(f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson_slice(fa, flm, fm, m - a);
    let right = simpson_slice(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if depth == 0 || delta.norm() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adapt(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + adapt(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
}
