//! Complex log-gamma: Stirling's series after shifting the argument right,
//! reflection for the left half plane. Relative error target 1e-10; used by
//! the functional-equation consistency checks.

use num_complex::Complex64;

use crate::lfunc::zeta::BERNOULLI_2K;

const SHIFT_RADIUS: f64 = 16.0;
const STIRLING_TERMS: usize = 8;

/// Principal branch of log Gamma(z) away from the poles 0, -1, -2, ...
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1-z).
        let pi = std::f64::consts::PI;
        return Complex64::new(pi.ln(), 0.0) - (pi * z).sin().ln() - ln_gamma(1.0 - z);
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm() < SHIFT_RADIUS {
        shift += w.ln();
        w += 1.0;
    }
    stirling(w) - shift
}

pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

fn stirling(z: Complex64) -> Complex64 {
    let mut acc = (z - 0.5) * z.ln() - z + 0.5 * (2.0 * std::f64::consts::PI).ln();
    let mut zpow = z; // z^{2k-1}
    let z2 = z * z;
    for (k, &(num, den)) in BERNOULLI_2K.iter().enumerate().take(STIRLING_TERMS) {
        let k = k + 1;
        acc += num / (den * ((2 * k) * (2 * k - 1)) as f64) / zpow;
        zpow *= z2;
    }
    acc
}
