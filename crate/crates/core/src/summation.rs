//! Compensated (Kahan–Neumaier) summation.
//!
//! Every prime sum and moment accumulation in this crate adds terms in a
//! fixed ascending order through one of these accumulators, so results are
//! bit-identical across runs and thread counts.

use num_complex::Complex64;

/// Neumaier variant of Kahan summation for `f64`.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Component-wise compensated accumulator for complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanComplex {
    re: KahanSum,
    im: KahanSum,
}

impl KahanComplex {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_terms() {
        // 1 + 1e100 - 1e100 loses the 1 in naive f64 summation.
        let mut k = KahanSum::new();
        k.add(1.0);
        k.add(1e100);
        k.add(-1e100);
        assert_eq!(k.value(), 1.0);
    }

    #[test]
    fn matches_exact_harmonic_sum() {
        let mut k = KahanSum::new();
        for n in 1..=100_000u64 {
            k.add(1.0 / n as f64);
        }
        // Reference value computed with 128-bit arithmetic elsewhere.
        assert!((k.value() - 12.090146129863427).abs() < 1e-12);
    }
}
