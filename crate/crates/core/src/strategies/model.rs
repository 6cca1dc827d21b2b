use super::result::ScheduleResult;
use crate::classical::ClassicalEnsemble;
use crate::error::{Error, Result};
use crate::pulse::{Engine, PulseSequence};
use crate::quantum::{kick_bandwidth, ThermalQuantumEnsemble};

/// Deterministic discretization of an engine used inside the strategies.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "engine", rename_all = "lowercase"))]
pub enum ModelSpec {
    /// Uniform trapezoid in `x₀` times Gauss-Hermite in `v₀`.
    Classical {
        sigma: f64,
        positions: usize,
        velocities: usize,
    },
    /// Momentum cells with a fixed Gauss-Legendre order in `ν₀`.
    Quantum {
        sigma: f64,
        nodes_per_cell: usize,
        tail_mass: f64,
    },
}

impl ModelSpec {
    pub fn classical(sigma: f64) -> Self {
        ModelSpec::Classical {
            sigma,
            positions: 2048,
            velocities: 32,
        }
    }

    pub fn quantum(sigma: f64) -> Self {
        ModelSpec::Quantum {
            sigma,
            nodes_per_cell: 32,
            tail_mass: 1e-12,
        }
    }

    pub fn engine(&self) -> Engine {
        match self {
            ModelSpec::Classical { .. } => Engine::Classical,
            ModelSpec::Quantum { .. } => Engine::Quantum,
        }
    }

    pub fn sigma(&self) -> f64 {
        match *self {
            ModelSpec::Classical { sigma, .. } | ModelSpec::Quantum { sigma, .. } => sigma,
        }
    }

    /// Fresh model able to absorb kicks of total strength `total_strength`.
    pub fn build(&self, total_strength: f64) -> Result<Model> {
        Ok(match *self {
            ModelSpec::Classical {
                sigma,
                positions,
                velocities,
            } => Model::Classical(ClassicalEnsemble::quadrature(sigma, positions, velocities)?),
            ModelSpec::Quantum {
                sigma,
                nodes_per_cell,
                tail_mass,
            } => Model::Quantum(ThermalQuantumEnsemble::new(
                sigma,
                nodes_per_cell,
                tail_mass,
                kick_bandwidth(total_strength),
            )?),
        })
    }
}

/// A propagating ensemble of either engine.
#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Classical(ClassicalEnsemble),
    Quantum(ThermalQuantumEnsemble),
}

impl Model {
    pub fn kick(&mut self, strength: f64) -> Result<()> {
        match self {
            Model::Classical(e) => {
                if !(strength >= 0.0) || !strength.is_finite() {
                    return Err(Error::Domain {
                        what: "kick strength",
                        value: strength,
                    });
                }
                e.kick(strength);
                Ok(())
            }
            Model::Quantum(e) => e.kick(strength),
        }
    }

    pub fn advance(&mut self, dtau: f64) -> Result<()> {
        match self {
            Model::Classical(e) => e.drift(dtau),
            Model::Quantum(e) => e.free_evolve(dtau),
        }
    }

    pub fn localization_after(&self, dtau: f64) -> f64 {
        match self {
            Model::Classical(e) => e.localization_after(dtau),
            Model::Quantum(e) => e.localization_after(dtau),
        }
    }
}

/// `L` at `t_final` after applying `sequence` from scratch.
pub fn evaluate(spec: &ModelSpec, sequence: &PulseSequence, t_final: f64) -> Result<f64> {
    let kicks = sequence.merged();
    if let Some(last) = kicks.last_time() {
        if t_final < last {
            return Err(Error::Domain {
                what: "evaluation time before the last kick",
                value: t_final,
            });
        }
    }
    let mut model = spec.build(kicks.total_strength())?;
    let mut now = 0.0;
    for k in kicks.kicks() {
        model.advance(k.tau - now)?;
        model.kick(k.strength)?;
        now = k.tau;
    }
    Ok(model.localization_after(t_final - now))
}

/// Re-simulates a schedule from scratch and returns `L` at its `t_min`.
pub fn resimulate(spec: &ModelSpec, result: &ScheduleResult) -> Result<f64> {
    evaluate(spec, &result.sequence, result.t_min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::localization_factor_closed;
    use crate::quantum::localization_closed_thermal;

    #[test]
    fn single_kick_matches_closed_forms() {
        let seq = PulseSequence::single(1.0).unwrap();
        for sigma in [0.0, 0.3] {
            let l = evaluate(&ModelSpec::classical(sigma), &seq, 1.5).unwrap();
            assert!((l - localization_factor_closed(1.5, sigma)).abs() < 1e-10);
            let l = evaluate(&ModelSpec::quantum(sigma), &seq, 2.5).unwrap();
            assert!((l - localization_closed_thermal(2.5, 1.0, sigma)).abs() < 1e-9);
        }
    }

    #[test]
    fn evaluation_before_last_kick_is_rejected() {
        let seq = PulseSequence::from_delays(1.0, &[2.0]).unwrap();
        assert!(evaluate(&ModelSpec::classical(0.0), &seq, 1.0).is_err());
    }
}
