use alloc::vec;
use alloc::vec::Vec;

use super::kernel::KickKernel;
use super::state::QuantumState;
use crate::error::{Error, Result};
use crate::math::{erfc, SQRT_2};
use crate::quadrature::{gauss_legendre, normal_pdf};
use crate::summation::NeumaierSum;

/// Quadrature over the initial momentum `p₀ = n₀ + ν₀`: a sum over integer
/// cells `n₀` and Gauss-Legendre in `ν₀` within each cell.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadratureSpec {
    /// Starting Gauss-Legendre node count per unit cell.
    pub nodes_per_cell: usize,
    /// Largest allowed change between successive node doublings.
    pub tolerance: f64,
    /// Gaussian mass allowed outside the `n₀` window.
    pub tail_mass: f64,
    /// Node count per cell beyond which refinement gives up.
    pub max_nodes_per_cell: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            nodes_per_cell: 32,
            tolerance: 1e-8,
            tail_mass: 1e-12,
            max_nodes_per_cell: 1024,
        }
    }
}

/// Smallest `N` such that a Gaussian of width `sigma` has less than
/// `tail_mass` outside `[-N - 1/2, N + 1/2)`.
pub fn momentum_window(sigma: f64, tail_mass: f64) -> usize {
    if sigma == 0.0 {
        return 0;
    }
    let mut n = 0usize;
    while erfc((n as f64 + 0.5) / (sigma * SQRT_2)) >= tail_mass {
        n += 1;
    }
    n
}

/// One quadrature node: the Gaussian-weighted state started at `p₀`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalMember {
    pub weight: f64,
    pub state: QuantumState,
}

/// Momentum states `n₀ + ν₀` covering a thermal distribution, propagated
/// together. Observables are weight-averaged and normalized by the captured
/// Gaussian mass.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalQuantumEnsemble {
    sigma: f64,
    nodes_per_cell: usize,
    n0_window: usize,
    members: Vec<ThermalMember>,
}

impl ThermalQuantumEnsemble {
    /// Builds the ensemble with basis half-width `n0_window + extra`.
    pub fn new(sigma: f64, nodes_per_cell: usize, tail_mass: f64, extra: usize) -> Result<Self> {
        if !(sigma >= 0.0) || !sigma.is_finite() {
            return Err(Error::Domain {
                what: "thermal width",
                value: sigma,
            });
        }
        if !(tail_mass > 0.0 && tail_mass < 1.0) {
            return Err(Error::Domain {
                what: "tail mass",
                value: tail_mass,
            });
        }
        if sigma == 0.0 {
            return Ok(Self {
                sigma,
                nodes_per_cell: 1,
                n0_window: 0,
                members: vec![ThermalMember {
                    weight: 1.0,
                    state: QuantumState::plane_wave(0, 0.0, extra)?,
                }],
            });
        }
        if nodes_per_cell == 0 {
            return Err(Error::Domain {
                what: "nodes per cell",
                value: 0.0,
            });
        }
        let window = momentum_window(sigma, tail_mass);
        let n_max = window + extra;
        let rule = gauss_legendre(nodes_per_cell).mapped(-0.5, 0.5);
        let mut members = Vec::with_capacity((2 * window + 1) * nodes_per_cell);
        for n0 in -(window as i64)..=(window as i64) {
            for (&nu0, &w) in rule.nodes.iter().zip(&rule.weights) {
                members.push(ThermalMember {
                    weight: w * normal_pdf((n0 as f64 + nu0) / sigma) / sigma,
                    state: QuantumState::plane_wave(n0, nu0, n_max)?,
                });
            }
        }
        Ok(Self {
            sigma,
            nodes_per_cell,
            n0_window: window,
            members,
        })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn nodes_per_cell(&self) -> usize {
        self.nodes_per_cell
    }

    /// Largest `|n₀|` in the ensemble.
    pub fn n0_window(&self) -> usize {
        self.n0_window
    }

    pub fn n_max(&self) -> usize {
        self.members[0].state.n_max()
    }

    pub fn members(&self) -> &[ThermalMember] {
        &self.members
    }

    /// Gaussian mass captured by the quadrature.
    pub fn captured_mass(&self) -> f64 {
        self.members.iter().map(|m| m.weight).collect::<NeumaierSum>().value()
    }

    pub fn free_evolve(&mut self, dtau: f64) -> Result<()> {
        for m in &mut self.members {
            m.state.free_evolve(dtau)?;
        }
        Ok(())
    }

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
        let kernel = KickKernel::new(strength);
        for m in &mut self.members {
            m.state.kick_with(&kernel)?;
        }
        Ok(())
    }

    pub fn localization_factor(&self) -> f64 {
        self.average(|s| s.localization_factor())
    }

    /// Thermal `L` after a further free evolution of `dtau`.
    pub fn localization_after(&self, dtau: f64) -> f64 {
        self.average(|s| s.localization_after(dtau))
    }

    /// Thermal density `Σ wᵢ |Ψᵢ(x)|² / Σ wᵢ` on the grid.
    pub fn density(&self, grid: &[f64]) -> Vec<f64> {
        let mut acc = vec![NeumaierSum::new(); grid.len()];
        for m in &self.members {
            for (a, f) in acc.iter_mut().zip(m.state.density(grid)) {
                a.add(m.weight * f);
            }
        }
        let total = self.captured_mass();
        acc.into_iter().map(|a| a.value() / total).collect()
    }

    /// Largest deviation of any member's norm from one.
    pub fn max_norm_drift(&self) -> f64 {
        self.members
            .iter()
            .map(|m| (m.state.norm_sqr() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    fn average(&self, f: impl Fn(&QuantumState) -> f64) -> f64 {
        let mut num = NeumaierSum::new();
        let mut den = NeumaierSum::new();
        for m in &self.members {
            num.add(m.weight * f(&m.state));
            den.add(m.weight);
        }
        num.value() / den.value()
    }
}

/// Converged thermal average of a vector of observables.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalAverage {
    pub values: Vec<f64>,
    /// Node count per cell of the accepted quadrature.
    pub nodes_per_cell: usize,
    /// Change from the previous (half-size) quadrature.
    pub achieved: f64,
    pub n0_window: usize,
    pub captured_mass: f64,
}

/// Evaluates `observable` on thermal ensembles of increasing quadrature
/// order until two successive results agree within `spec.tolerance`.
///
/// Each ensemble has basis half-width `n0_window + extra`. The closure
/// propagates the ensemble and returns its observables.
pub fn thermal_average<F>(
    sigma: f64,
    spec: &QuadratureSpec,
    extra: usize,
    mut observable: F,
) -> Result<ThermalAverage>
where
    F: FnMut(&mut ThermalQuantumEnsemble) -> Result<Vec<f64>>,
{
    let mut nodes = spec.nodes_per_cell.max(1);
    let mut ens = ThermalQuantumEnsemble::new(sigma, nodes, spec.tail_mass, extra)?;
    let captured_mass = ens.captured_mass();
    let n0_window = ens.n0_window();
    let mut previous = observable(&mut ens)?;
    if sigma == 0.0 {
        return Ok(ThermalAverage {
            values: previous,
            nodes_per_cell: 1,
            achieved: 0.0,
            n0_window,
            captured_mass,
        });
    }
    let mut achieved = f64::INFINITY;
    while nodes * 2 <= spec.max_nodes_per_cell {
        nodes *= 2;
        let mut ens = ThermalQuantumEnsemble::new(sigma, nodes, spec.tail_mass, extra)?;
        let captured_mass = ens.captured_mass();
        let current = observable(&mut ens)?;
        achieved = previous
            .iter()
            .zip(&current)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if achieved < spec.tolerance {
            return Ok(ThermalAverage {
                values: current,
                nodes_per_cell: nodes,
                achieved,
                n0_window,
                captured_mass,
            });
        }
        previous = current;
    }
    Err(Error::Quadrature {
        achieved,
        requested: spec.tolerance,
    })
}
