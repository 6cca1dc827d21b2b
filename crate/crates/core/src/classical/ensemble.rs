use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::math::{cos, sin, wrap_phase, PI, TAU};
use crate::quadrature::gauss_hermite_normal;
use crate::summation::NeumaierSum;

/// Particle positions and velocities, optionally with quadrature weights.
///
/// Monte Carlo ensembles carry equal weights and remember their seed.
/// Quadrature ensembles place particles on a uniform position grid times
/// Gauss-Hermite velocity nodes, which turns ensemble averages into
/// noise-free quadratures of the phase-space integral.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalEnsemble {
    x: Vec<f64>,
    v: Vec<f64>,
    weights: Option<Vec<f64>>,
    seed: Option<u64>,
}

impl ClassicalEnsemble {
    /// Ensemble from explicit phase-space points; positions are wrapped into
    /// `[-π, π)`.
    pub fn from_phase_space(x: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if x.len() != v.len() {
            return Err(Error::LengthMismatch {
                positions: x.len(),
                velocities: v.len(),
            });
        }
        if x.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        Ok(Self {
            x: x.into_iter().map(wrap_phase).collect(),
            v,
            weights: None,
            seed: None,
        })
    }

    /// Thermal Monte Carlo sample: positions uniform on `[-π, π)`,
    /// velocities normal with standard deviation `sigma`.
    ///
    /// The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`.
    /// Each particle draws its position and then its velocity, so a given
    /// seed yields bit-identical arrays on every platform.
    pub fn sample_thermal(n: usize, sigma: f64, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyEnsemble);
        }
        check_sigma(sigma)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = Vec::with_capacity(n);
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            let u: f64 = rng.random();
            let z: f64 = rng.sample(StandardNormal);
            x.push(wrap_phase(-PI + TAU * u));
            v.push(sigma * z);
        }
        Ok(Self {
            x,
            v,
            weights: None,
            seed: Some(seed),
        })
    }

    /// Deterministic quadrature ensemble: `n_x` uniform positions times
    /// `n_v` Gauss-Hermite velocities (a single zero velocity when
    /// `sigma = 0`).
    pub fn quadrature(sigma: f64, n_x: usize, n_v: usize) -> Result<Self> {
        check_sigma(sigma)?;
        if n_x == 0 || n_v == 0 {
            return Err(Error::EmptyEnsemble);
        }
        let grid: Vec<f64> = crate::profile::uniform_grid(n_x);
        if sigma == 0.0 {
            let w = 1.0 / n_x as f64;
            return Ok(Self {
                x: grid,
                v: alloc::vec![0.0; n_x],
                weights: Some(alloc::vec![w; n_x]),
                seed: None,
            });
        }
        let rule = gauss_hermite_normal(n_v);
        let mut x = Vec::with_capacity(n_x * n_v);
        let mut v = Vec::with_capacity(n_x * n_v);
        let mut weights = Vec::with_capacity(n_x * n_v);
        for (z, wz) in rule.nodes.iter().zip(&rule.weights) {
            for &x0 in &grid {
                x.push(x0);
                v.push(sigma * z);
                weights.push(wz / n_x as f64);
            }
        }
        Ok(Self {
            x,
            v,
            weights: Some(weights),
            seed: None,
        })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn positions(&self) -> &[f64] {
        &self.x
    }

    pub fn velocities(&self) -> &[f64] {
        &self.v
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// δ-kick: `v → v − strength · sin x`.
    pub fn kick(&mut self, strength: f64) {
        for (v, x) in self.v.iter_mut().zip(&self.x) {
            *v -= strength * sin(*x);
        }
    }

    /// Free flight for `dtau`: `x → x + v dtau`, wrapped into `[-π, π)`.
    pub fn drift(&mut self, dtau: f64) -> Result<()> {
        if !(dtau >= 0.0) || !dtau.is_finite() {
            return Err(Error::Domain {
                what: "drift time",
                value: dtau,
            });
        }
        if dtau == 0.0 {
            return Ok(());
        }
        for (x, v) in self.x.iter_mut().zip(&self.v) {
            *x = wrap_phase(*x + *v * dtau);
        }
        Ok(())
    }

    /// `L = 1 − ⟨cos x⟩`.
    pub fn localization_factor(&self) -> f64 {
        1.0 - self.mean_of(|x, _| cos(x))
    }

    /// `L` after a further free flight of `dtau`, without moving the
    /// particles.
    pub fn localization_after(&self, dtau: f64) -> f64 {
        1.0 - self.mean_of(|x, v| cos(x + v * dtau))
    }

    /// Mean and sample standard deviation of `cos x` (unweighted; intended
    /// for Monte Carlo error bars).
    pub fn cos_statistics(&self) -> (f64, f64) {
        let n = self.x.len() as f64;
        let mean = self.x.iter().map(|x| cos(*x)).collect::<NeumaierSum>().value() / n;
        let var = self
            .x
            .iter()
            .map(|x| {
                let d = cos(*x) - mean;
                d * d
            })
            .collect::<NeumaierSum>()
            .value()
            / (n - 1.0).max(1.0);
        (mean, libm::sqrt(var))
    }

    fn mean_of(&self, f: impl Fn(f64, f64) -> f64) -> f64 {
        let mut acc = NeumaierSum::new();
        match &self.weights {
            Some(w) => {
                for ((x, v), w) in self.x.iter().zip(&self.v).zip(w) {
                    acc.add(w * f(*x, *v));
                }
                acc.value()
            }
            None => {
                for (x, v) in self.x.iter().zip(&self.v) {
                    acc.add(f(*x, *v));
                }
                acc.value() / self.x.len() as f64
            }
        }
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma.is_finite() && sigma >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "thermal width",
            value: sigma,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use core::f64::consts::FRAC_PI_2;

    fn single(x: f64, v: f64) -> ClassicalEnsemble {
        ClassicalEnsemble::from_phase_space(vec![x], vec![v]).unwrap()
    }

    #[test]
    fn kick_examples() {
        let mut e = single(FRAC_PI_2, 0.0);
        e.kick(1.0);
        assert_eq!(e.velocities()[0], -1.0);

        let mut e = single(0.0, 0.7);
        e.kick(1.0);
        assert_eq!(e.velocities()[0], 0.7);

        let mut e = single(-FRAC_PI_2, 0.3);
        e.kick(1.0);
        assert!((e.velocities()[0] - 1.3).abs() < 1e-15);
        assert_eq!(e.positions()[0], -FRAC_PI_2);
    }

    #[test]
    fn drift_examples() {
        let mut e = single(0.0, 1.0);
        e.drift(PI).unwrap();
        assert_eq!(e.positions()[0], -PI);

        let mut e = single(0.5, 0.0);
        e.drift(7.0).unwrap();
        assert_eq!(e.positions()[0], 0.5);

        let mut e = single(0.0, 2.0);
        e.drift(TAU).unwrap();
        assert!(e.positions()[0].abs() < 1e-14);

        assert!(e.drift(-0.1).is_err());
    }

    #[test]
    fn zero_temperature_sample_is_at_rest() {
        let e = ClassicalEnsemble::sample_thermal(1000, 0.0, 3).unwrap();
        assert!(e.velocities().iter().all(|v| *v == 0.0));
        assert!(e.positions().iter().all(|x| (-PI..PI).contains(x)));
        assert!(ClassicalEnsemble::sample_thermal(0, 0.0, 3).is_err());
    }

    #[test]
    fn same_seed_same_ensemble() {
        let a = ClassicalEnsemble::sample_thermal(500, 0.4, 11).unwrap();
        let b = ClassicalEnsemble::sample_thermal(500, 0.4, 11).unwrap();
        let c = ClassicalEnsemble::sample_thermal(500, 0.4, 12).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.positions(), c.positions());
    }

    #[test]
    fn thermal_velocity_width() {
        let n = 1_000_000;
        let e = ClassicalEnsemble::sample_thermal(n, 0.5, 2024).unwrap();
        let mean = e.velocities().iter().sum::<f64>() / n as f64;
        let var = e.velocities().iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
        let sd = libm::sqrt(var);
        assert!((0.4985..=0.5015).contains(&sd), "sd = {sd}");
    }

    #[test]
    fn localization_of_extremes() {
        let e = ClassicalEnsemble::from_phase_space(vec![0.0; 10], vec![0.0; 10]).unwrap();
        assert_eq!(e.localization_factor(), 0.0);
        let n = 100_000;
        let u = ClassicalEnsemble::sample_thermal(n, 0.0, 5).unwrap();
        assert!((u.localization_factor() - 1.0).abs() < 3.0 / libm::sqrt(n as f64));
    }

    #[test]
    fn quadrature_ensemble_weights_sum_to_one() {
        let q = ClassicalEnsemble::quadrature(0.7, 128, 16).unwrap();
        let total: f64 = q.weights().unwrap().iter().sum();
        assert!((total - 1.0).abs() < 1e-13);
        assert_eq!(q.len(), 128 * 16);
        // uniform positions ⇒ L = 1
        assert!((q.localization_factor() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_mismatched_arrays() {
        assert!(matches!(
            ClassicalEnsemble::from_phase_space(vec![0.0, 1.0], vec![0.0]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            ClassicalEnsemble::from_phase_space(vec![], vec![]),
            Err(Error::EmptyEnsemble)
        ));
    }
}
