use alloc::vec::Vec;

use num_complex::Complex64;

use crate::math::{ceil, powf};
use crate::special::bessel_j_orders;

/// Number of off-diagonal Bessel orders kept for a kick of strength `P`:
/// `⌈P + 8 P^{1/3} + 10⌉`. `J_k(P)` is below double precision beyond it.
pub fn kick_bandwidth(strength: f64) -> usize {
    ceil(strength + 8.0 * powf(strength, 1.0 / 3.0) + 10.0) as usize
}

/// Momentum window half-width for a state occupying `|n| ≤ occupied` that
/// will receive kicks of total strength `total_strength`.
pub fn basis_half_width(occupied: usize, total_strength: f64) -> usize {
    occupied + kick_bandwidth(total_strength)
}

/// Banded kick kernel `K_k = i^k J_k(P)` for `k ∈ [-w, w]`.
#[derive(Debug, Clone, PartialEq)]
pub struct KickKernel {
    strength: f64,
    half_width: usize,
    taps: Vec<Complex64>,
}

impl KickKernel {
    pub fn new(strength: f64) -> Self {
        let w = kick_bandwidth(strength);
        let j = bessel_j_orders(w, strength);
        let mut taps = Vec::with_capacity(2 * w + 1);
        for k in -(w as i64)..=(w as i64) {
            let order = k.unsigned_abs() as usize;
            // J_{-k} = (-1)^k J_k
            let jk = if k < 0 && order % 2 == 1 { -j[order] } else { j[order] };
            taps.push(i_pow(k) * jk);
        }
        Self {
            strength,
            half_width: w,
            taps,
        }
    }

    pub fn strength(&self) -> f64 {
        self.strength
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    /// `i^k J_k(P)` for `|k| ≤ w`, zero outside the band.
    pub fn tap(&self, k: i64) -> Complex64 {
        let w = self.half_width as i64;
        if k.abs() > w {
            Complex64::new(0.0, 0.0)
        } else {
            self.taps[(k + w) as usize]
        }
    }

    /// Applies the kernel to coefficients indexed `-n_max..=n_max`.
    pub(crate) fn apply(&self, input: &[Complex64], output: &mut [Complex64]) {
        let len = input.len() as i64;
        let w = self.half_width as i64;
        for (n, out) in output.iter_mut().enumerate() {
            let n = n as i64;
            let lo = (n - w).max(0);
            let hi = (n + w).min(len - 1);
            let mut acc = Complex64::new(0.0, 0.0);
            for m in lo..=hi {
                acc += self.taps[(n - m + w) as usize] * input[m as usize];
            }
            *out = acc;
        }
    }
}

fn i_pow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bandwidth_grows_with_strength() {
        assert_eq!(kick_bandwidth(0.0), 10);
        assert_eq!(kick_bandwidth(1.0), 19);
        assert!(kick_bandwidth(10.0) >= 37);
    }

    #[test]
    fn column_norms_are_one() {
        // Σ_k J_k(P)² = 1 makes every column of the kick matrix a unit vector.
        for p in [0.0, 0.5, 1.0, 2.7, 10.0, 35.0] {
            let k = KickKernel::new(p);
            let w = k.half_width() as i64;
            let s: f64 = (-w..=w).map(|j| k.tap(j).norm_sqr()).sum();
            assert!((s - 1.0).abs() < 1e-14, "P={p}: {s}");
        }
    }

    #[test]
    fn taps_follow_jacobi_anger() {
        // Σ_k i^k J_k(P) e^{ikx} = e^{iP cos x}
        let k = KickKernel::new(2.3);
        let w = k.half_width() as i64;
        for x in [0.0, 0.7, 2.0, -2.9] {
            let s: Complex64 = (-w..=w)
                .map(|j| k.tap(j) * Complex64::from_polar(1.0, j as f64 * x))
                .sum();
            let expected = Complex64::from_polar(1.0, 2.3 * libm::cos(x));
            assert!((s - expected).norm() < 1e-14);
        }
    }
}
