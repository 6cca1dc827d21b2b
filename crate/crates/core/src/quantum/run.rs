use alloc::vec::Vec;

use super::kernel::basis_half_width;
use super::thermal::{thermal_average, QuadratureSpec, ThermalQuantumEnsemble};
use crate::error::{Error, Result};
use crate::profile::DensityProfile;
use crate::pulse::PulseSequence;
use crate::trace::{check_sample_times, LocalizationTrace};

/// Numerical controls for [`run_quantum`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuantumOptions {
    pub quadrature: QuadratureSpec,
    /// Times the momentum basis may be doubled after a truncation failure.
    pub max_basis_doublings: u32,
}

impl Default for QuantumOptions {
    fn default() -> Self {
        Self {
            quadrature: QuadratureSpec::default(),
            max_basis_doublings: 4,
        }
    }
}

/// Thermal quantum localization trace for a pulse sequence.
///
/// Kicks at equal times act as one kick of summed strength. Between samples
/// no evolution is stored; `L` at each sample time is evaluated from the
/// state right after the most recent kick.
pub fn run_quantum(
    sequence: &PulseSequence,
    sigma: f64,
    sample_times: &[f64],
    options: &QuantumOptions,
) -> Result<LocalizationTrace> {
    check_sample_times(sample_times)?;
    let kicks = sequence.merged();
    let mut extra = basis_half_width(0, kicks.total_strength());
    let mut doublings = 0;
    let values = loop {
        let outcome = thermal_average(sigma, &options.quadrature, extra, |ens| {
            propagate(ens, &kicks, sample_times)
        });
        match outcome {
            Ok(avg) => break avg.values,
            Err(Error::BasisTooSmall { required, .. }) if doublings < options.max_basis_doublings => {
                extra = (2 * extra).max(required);
                doublings += 1;
            }
            Err(e) => return Err(e),
        }
    };
    let mut trace = LocalizationTrace::new();
    for (&t, l) in sample_times.iter().zip(values) {
        trace.push(t, l)?;
    }
    Ok(trace)
}

/// Thermal density `|Ψ(x, τ)|²` on `grid` after `sequence`, with the same
/// quadrature refinement and basis policy as [`run_quantum`].
pub fn spatial_density_quantum(
    sequence: &PulseSequence,
    sigma: f64,
    tau: f64,
    grid: &[f64],
    options: &QuantumOptions,
) -> Result<DensityProfile> {
    check_sample_times(&[tau])?;
    let kicks = sequence.merged();
    let mut extra = basis_half_width(0, kicks.total_strength());
    let mut doublings = 0;
    loop {
        let outcome = thermal_average(sigma, &options.quadrature, extra, |ens| {
            let mut now = 0.0;
            for k in kicks.kicks().iter().take_while(|k| k.tau <= tau) {
                ens.free_evolve(k.tau - now)?;
                ens.kick(k.strength)?;
                now = k.tau;
            }
            ens.free_evolve(tau - now)?;
            Ok(ens.density(grid))
        });
        match outcome {
            Ok(avg) => {
                return Ok(DensityProfile {
                    grid: grid.to_vec(),
                    density: avg.values,
                })
            }
            Err(Error::BasisTooSmall { required, .. }) if doublings < options.max_basis_doublings => {
                extra = (2 * extra).max(required);
                doublings += 1;
            }
            Err(e) => return Err(e),
        }
    }
}

fn propagate(
    ens: &mut ThermalQuantumEnsemble,
    kicks: &PulseSequence,
    sample_times: &[f64],
) -> Result<Vec<f64>> {
    let mut pending = kicks.kicks().iter().peekable();
    let mut now = 0.0;
    let mut out = Vec::with_capacity(sample_times.len());
    for &t in sample_times {
        while let Some(k) = pending.next_if(|k| k.tau <= t) {
            ens.free_evolve(k.tau - now)?;
            ens.kick(k.strength)?;
            now = k.tau;
        }
        out.push(ens.localization_after(t - now));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pulse::Kick;
    use crate::quantum::localization_closed_thermal;
    use crate::trace::uniform_times;
    use alloc::vec;

    #[test]
    fn empty_sequence_is_flat() {
        let t = run_quantum(&PulseSequence::empty(), 0.5, &uniform_times(6.0, 13), &Default::default())
            .unwrap();
        assert!(t.values().all(|l| (l - 1.0).abs() < 1e-14));
    }

    #[test]
    fn single_kick_matches_closed_form() {
        let times = uniform_times(12.6, 64);
        let t = run_quantum(&PulseSequence::single(0.5).unwrap(), 0.0, &times, &Default::default()).unwrap();
        for s in t.samples() {
            assert!((s.localization - localization_closed_thermal(s.tau, 0.5, 0.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn delayed_kick_shifts_the_trace() {
        let seq = PulseSequence::new(vec![Kick { tau: 1.0, strength: 2.0 }]).unwrap();
        let times = [0.5, 1.0, 1.7, 4.0];
        let t = run_quantum(&seq, 0.0, &times, &Default::default()).unwrap();
        let v: Vec<f64> = t.values().collect();
        assert!((v[0] - 1.0).abs() < 1e-14);
        for (i, &tau) in times.iter().enumerate().skip(1) {
            assert!((v[i] - localization_closed_thermal(tau - 1.0, 2.0, 0.0)).abs() < 1e-12);
        }
    }
}
