//! Spatial probability densities on the periodic cell `[-π, π)`.

use alloc::vec::Vec;

use crate::math::{PI, TAU};
use crate::summation;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DensityProfile {
    pub grid: Vec<f64>,
    pub density: Vec<f64>,
}

impl DensityProfile {
    /// Periodic trapezoid rule, exact for trigonometric polynomials of degree
    /// below the grid size. Assumes the grid came from [`uniform_grid`].
    pub fn periodic_integral(&self) -> f64 {
        if self.grid.is_empty() {
            return 0.0;
        }
        let h = TAU / self.grid.len() as f64;
        h * summation::sum(self.density.iter().copied())
    }

    /// `∫ f(x) cos x dx` by the same rule.
    pub fn mean_cos(&self) -> f64 {
        if self.grid.is_empty() {
            return 0.0;
        }
        let h = TAU / self.grid.len() as f64;
        h * summation::sum(self.grid.iter().zip(&self.density).map(|(x, f)| f * crate::math::cos(*x)))
    }

    /// Indices of strict local maxima, treating the grid as periodic.
    pub fn local_maxima(&self) -> Vec<usize> {
        let n = self.density.len();
        (0..n)
            .filter(|&i| {
                let f = self.density[i];
                let prev = self.density[(i + n - 1) % n];
                let next = self.density[(i + 1) % n];
                f > prev && f >= next
            })
            .collect()
    }
}

/// `n` points `-π + 2πi/n`, covering `[-π, π)`.
pub fn uniform_grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| -PI + TAU * i as f64 / n as f64).collect()
}
