use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::kernel::{kick_bandwidth, KickKernel};
use crate::error::{Error, Result};
use crate::math::{sin_cos, sqrt, TAU};
use crate::summation::NeumaierSum;

/// Largest probability allowed in the outermost momentum components after a
/// kick before the basis is declared too small.
pub const EDGE_OCCUPANCY_LIMIT: f64 = 1e-10;

const NORM_TOLERANCE: f64 = 1e-12;

/// Momentum-basis coefficients `cₙ`, `n ∈ [-n_max, n_max]`, in the sector
/// with quasimomentum `ν₀ ∈ [-1/2, 1/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    coefficients: Vec<Complex64>,
    nu0: f64,
    n_max: usize,
}

impl QuantumState {
    /// Momentum eigenstate `p₀ = n₀ + ν₀`.
    pub fn plane_wave(n0: i64, nu0: f64, n_max: usize) -> Result<Self> {
        check_quasimomentum(nu0)?;
        if n0.unsigned_abs() as usize > n_max {
            return Err(Error::Domain {
                what: "plane-wave index outside the momentum window",
                value: n0 as f64,
            });
        }
        let mut coefficients = vec![Complex64::new(0.0, 0.0); 2 * n_max + 1];
        coefficients[(n0 + n_max as i64) as usize] = Complex64::new(1.0, 0.0);
        Ok(Self {
            coefficients,
            nu0,
            n_max,
        })
    }

    /// State from coefficients indexed `-n_max..=n_max` (odd length).
    pub fn from_coefficients(coefficients: Vec<Complex64>, nu0: f64) -> Result<Self> {
        check_quasimomentum(nu0)?;
        if coefficients.len() % 2 == 0 {
            return Err(Error::Domain {
                what: "coefficient count (must be odd)",
                value: coefficients.len() as f64,
            });
        }
        let n_max = coefficients.len() / 2;
        let state = Self {
            coefficients,
            nu0,
            n_max,
        };
        let norm_sqr = state.norm_sqr();
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(state)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn quasimomentum(&self) -> f64 {
        self.nu0
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// `cₙ`, zero outside the window.
    pub fn coefficient(&self, n: i64) -> Complex64 {
        let idx = n + self.n_max as i64;
        if idx < 0 || idx as usize >= self.coefficients.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coefficients[idx as usize]
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).collect::<NeumaierSum>().value()
    }

    /// Probability in the two outermost components.
    pub fn edge_occupancy(&self) -> f64 {
        self.coefficients[0].norm_sqr() + self.coefficients[2 * self.n_max].norm_sqr()
    }

    /// Largest `|n|` with `|cₙ|² > threshold`.
    pub fn occupied_half_width(&self, threshold: f64) -> usize {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm_sqr() > threshold)
            .map(|(i, _)| (i as i64 - self.n_max as i64).unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Same state in a window of half-width `n_max`. Shrinking drops
    /// components outside the new window.
    pub fn resized(&self, n_max: usize) -> Self {
        let mut coefficients = vec![Complex64::new(0.0, 0.0); 2 * n_max + 1];
        for (i, c) in coefficients.iter_mut().enumerate() {
            *c = self.coefficient(i as i64 - n_max as i64);
        }
        Self {
            coefficients,
            nu0: self.nu0,
            n_max,
        }
    }

    /// Free evolution: `cₙ → cₙ exp(−i(n + ν₀)² dτ/2)`.
    pub fn free_evolve(&mut self, dtau: f64) -> Result<()> {
        if !(dtau >= 0.0) || !dtau.is_finite() {
            return Err(Error::Domain {
                what: "free-evolution time",
                value: dtau,
            });
        }
        if dtau == 0.0 {
            return Ok(());
        }
        let offset = self.n_max as i64;
        for (i, c) in self.coefficients.iter_mut().enumerate() {
            let k = (i as i64 - offset) as f64 + self.nu0;
            let (s, co) = sin_cos(-0.5 * k * k * dtau);
            *c *= Complex64::new(co, s);
        }
        Ok(())
    }

    /// δ-kick of strength `P`.
    pub fn kick(&mut self, strength: f64) -> Result<()> {
        if !(strength >= 0.0) || !strength.is_finite() {
            return Err(Error::Domain {
                what: "kick strength",
                value: strength,
            });
        }
        if strength == 0.0 {
            return Ok(());
        }
        self.kick_with(&KickKernel::new(strength))
    }

    /// δ-kick with a precomputed kernel. Fails if the kick pushes more than
    /// [`EDGE_OCCUPANCY_LIMIT`] of probability into the window edge.
    pub fn kick_with(&mut self, kernel: &KickKernel) -> Result<()> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.coefficients.len()];
        kernel.apply(&self.coefficients, &mut out);
        let before = self.occupied_half_width(1e-30);
        self.coefficients = out;
        let edge = self.edge_occupancy();
        if edge >= EDGE_OCCUPANCY_LIMIT {
            return Err(Error::BasisTooSmall {
                n_max: self.n_max,
                required: before + kick_bandwidth(kernel.strength()),
                edge_occupancy: edge,
            });
        }
        Ok(())
    }

    /// `L = 1 − Re Σ cₙ c*ₙ₊₁`.
    pub fn localization_factor(&self) -> f64 {
        let mut acc = NeumaierSum::new();
        for w in self.coefficients.windows(2) {
            acc.add((w[0] * w[1].conj()).re);
        }
        1.0 - acc.value()
    }

    /// `L` after a further free evolution of `dtau`, without evolving:
    /// `1 − Re Σ cₙ c*ₙ₊₁ exp(i(n + ν₀ + 1/2) dτ)`.
    pub fn localization_after(&self, dtau: f64) -> f64 {
        if dtau == 0.0 {
            return self.localization_factor();
        }
        let first = -(self.n_max as f64) + self.nu0 + 0.5;
        let (s0, c0) = sin_cos(first * dtau);
        let (s1, c1) = sin_cos(dtau);
        let step = Complex64::new(c1, s1);
        let mut phase = Complex64::new(c0, s0);
        let mut acc = NeumaierSum::new();
        for (i, w) in self.coefficients.windows(2).enumerate() {
            // re-anchor the running phase to keep rounding from accumulating
            if i % 64 == 63 {
                let (s, c) = sin_cos((first + i as f64) * dtau);
                phase = Complex64::new(c, s);
            }
            acc.add((w[0] * w[1].conj() * phase).re);
            phase *= step;
        }
        1.0 - acc.value()
    }

    /// `|Ψ(x)|²` at each grid point.
    pub fn density(&self, grid: &[f64]) -> Vec<f64> {
        let offset = self.n_max as i64;
        grid.iter()
            .map(|&x| {
                let (s1, c1) = sin_cos(x);
                let step = Complex64::new(c1, s1);
                let (s0, c0) = sin_cos(-(offset as f64) * x);
                let mut phase = Complex64::new(c0, s0);
                let mut amp = Complex64::new(0.0, 0.0);
                for (i, c) in self.coefficients.iter().enumerate() {
                    if i % 64 == 63 {
                        let (s, co) = sin_cos((i as i64 - offset) as f64 * x);
                        phase = Complex64::new(co, s);
                    }
                    amp += c * phase;
                    phase *= step;
                }
                amp.norm_sqr() / TAU
            })
            .collect()
    }

    /// Normalizes in place; used after truncating a state.
    pub fn normalize(&mut self) {
        let n = sqrt(self.norm_sqr());
        if n > 0.0 {
            for c in &mut self.coefficients {
                *c /= n;
            }
        }
    }
}

fn check_quasimomentum(nu0: f64) -> Result<()> {
    if (-0.5..0.5).contains(&nu0) {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "quasimomentum (must lie in [-1/2, 1/2))",
            value: nu0,
        })
    }
}
