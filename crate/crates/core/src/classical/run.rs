use alloc::vec::Vec;

use super::ClassicalEnsemble;
use crate::error::Result;
use crate::pulse::PulseSequence;
use crate::trace::{check_sample_times, LocalizationTrace};

/// Monte Carlo localization trace: samples `n` thermal particles with the
/// given seed and propagates them through `sequence`, recording `L` at each
/// sample time.
pub fn run_classical(
    sequence: &PulseSequence,
    sigma: f64,
    n: usize,
    sample_times: &[f64],
    seed: u64,
) -> Result<LocalizationTrace> {
    let ensemble = ClassicalEnsemble::sample_thermal(n, sigma, seed)?;
    propagate_trace(ensemble, sequence, sample_times)
}

/// Propagates any ensemble (Monte Carlo or quadrature) from `τ = 0` through
/// `sequence`. Coincident kicks act as one kick with the summed strength.
pub fn propagate_trace(
    mut ensemble: ClassicalEnsemble,
    sequence: &PulseSequence,
    sample_times: &[f64],
) -> Result<LocalizationTrace> {
    check_sample_times(sample_times)?;
    let kicks = sequence.merged();
    let mut pending = kicks.kicks().iter().peekable();
    let mut now = 0.0;
    let mut trace = LocalizationTrace::new();
    for &t in sample_times {
        while let Some(k) = pending.next_if(|k| k.tau <= t) {
            ensemble.drift(k.tau - now)?;
            ensemble.kick(k.strength);
            now = k.tau;
        }
        trace.push(t, ensemble.localization_after(t - now))?;
    }
    Ok(trace)
}

/// Phase-space snapshots of the ensemble at each sample time.
pub fn phase_space_snapshots(
    mut ensemble: ClassicalEnsemble,
    sequence: &PulseSequence,
    sample_times: &[f64],
) -> Result<Vec<ClassicalEnsemble>> {
    check_sample_times(sample_times)?;
    let kicks = sequence.merged();
    let mut pending = kicks.kicks().iter().peekable();
    let mut now = 0.0;
    let mut out = Vec::with_capacity(sample_times.len());
    for &t in sample_times {
        while let Some(k) = pending.next_if(|k| k.tau <= t) {
            ensemble.drift(k.tau - now)?;
            ensemble.kick(k.strength);
            now = k.tau;
        }
        ensemble.drift(t - now)?;
        now = t;
        out.push(ensemble.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::localization_factor_closed;
    use crate::pulse::Kick;
    use crate::trace::uniform_times;
    use alloc::vec;

    #[test]
    fn empty_sequence_stays_uniform() {
        let n = 200_000;
        let trace = run_classical(&PulseSequence::empty(), 0.3, n, &uniform_times(5.0, 11), 1).unwrap();
        for s in trace.samples() {
            assert!((s.localization - 1.0).abs() < 4.0 * 0.71 / libm::sqrt(n as f64));
        }
    }

    #[test]
    fn quadrature_ensemble_matches_closed_form() {
        let times = uniform_times(6.0, 61);
        for sigma in [0.0, 0.2, 1.0] {
            let q = ClassicalEnsemble::quadrature(sigma, 2048, 48).unwrap();
            let trace = propagate_trace(q, &PulseSequence::single(1.0).unwrap(), &times).unwrap();
            for s in trace.samples() {
                let exact = localization_factor_closed(s.tau, sigma);
                assert!((s.localization - exact).abs() < 1e-10, "σ={sigma} τ={}", s.tau);
            }
        }
    }

    #[test]
    fn coincident_kicks_equal_one_double_kick() {
        let times = uniform_times(3.0, 31);
        let split = PulseSequence::new(vec![Kick::new(0.0, 1.0), Kick::new(1.0, 0.4), Kick::new(1.0, 0.6)]).unwrap();
        let joined = PulseSequence::new(vec![Kick::new(0.0, 1.0), Kick::new(1.0, 1.0)]).unwrap();
        let a = run_classical(&split, 0.2, 10_000, &times, 9).unwrap();
        let b = run_classical(&joined, 0.2, 10_000, &times, 9).unwrap();
        for (x, y) in a.values().zip(b.values()) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn snapshots_follow_the_flow() {
        let e = ClassicalEnsemble::from_phase_space(vec![0.5], vec![0.0]).unwrap();
        let snaps = phase_space_snapshots(e, &PulseSequence::single(1.0).unwrap(), &[0.0, 1.0]).unwrap();
        assert!((snaps[0].velocities()[0] + libm::sin(0.5)).abs() < 1e-15);
        assert!((snaps[1].positions()[0] - (0.5 - libm::sin(0.5))).abs() < 1e-15);
    }
}
