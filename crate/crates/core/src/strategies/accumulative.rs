use alloc::vec::Vec;

use super::model::ModelSpec;
use super::result::{Diagnostics, ScheduleResult};
use crate::error::{Error, Result};
use crate::minimize::first_local_minimum;
use crate::pulse::{Engine, Kick, PulseSequence};
use crate::quantum::REVIVAL_PERIOD;

/// Controls for [`accumulative_schedule`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AccumulativeOptions {
    /// Forward scan step used to bracket each minimum.
    pub step: f64,
    /// Golden-section tolerance.
    pub tolerance: f64,
    /// Longest delay searched after a kick.
    pub horizon: f64,
    /// Quantum only: lengthen every delay by one revival period.
    pub revival_shift: bool,
}

impl Default for AccumulativeOptions {
    fn default() -> Self {
        Self {
            step: 0.01,
            tolerance: 1e-6,
            horizon: 20.0,
            revival_shift: false,
        }
    }
}

/// Greedy schedule of `kicks` identical kicks: the first at `τ = 0`, each
/// following one at the first local minimum of `L` after its predecessor.
///
/// `l_min` and `t_min` describe the minimum after the last kick; the minima
/// after every kick are in `diagnostics.per_kick_minima`.
pub fn accumulative_schedule(
    spec: &ModelSpec,
    strength: f64,
    kicks: usize,
    options: &AccumulativeOptions,
) -> Result<ScheduleResult> {
    if kicks == 0 {
        return Err(Error::InvalidSequence("accumulative schedule needs at least one kick"));
    }
    if options.revival_shift && spec.engine() != Engine::Quantum {
        return Err(Error::InvalidSequence("revival shift applies to the quantum engine only"));
    }
    let shift = if options.revival_shift { REVIVAL_PERIOD } else { 0.0 };
    let mut model = spec.build(strength * kicks as f64)?;
    let mut sequence = PulseSequence::empty();
    let mut minima = Vec::with_capacity(kicks);
    let mut evaluations = 0;
    let mut now = 0.0;
    let mut t_min = 0.0;
    for k in 0..kicks {
        model.kick(strength)?;
        sequence.push(Kick::new(now, strength))?;
        let m = first_local_minimum(
            |s| model.localization_after(s),
            options.step,
            options.horizon,
            options.tolerance,
        )
        .ok_or(Error::Bracket {
            kick_time: now,
            limit: options.horizon,
        })?;
        evaluations += m.evaluations;
        minima.push(m.value);
        t_min = now + m.x;
        if k + 1 < kicks {
            let delay = m.x + shift;
            model.advance(delay)?;
            now += delay;
        }
    }
    let l_min = *minima.last().unwrap_or(&1.0);
    Ok(ScheduleResult {
        sequence,
        l_min,
        t_min,
        engine: spec.engine(),
        diagnostics: Diagnostics {
            evaluations,
            per_kick_minima: minima,
            optimizer_trace: Vec::new(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategies::resimulate;

    #[test]
    fn classical_first_kicks() {
        let r = accumulative_schedule(&ModelSpec::classical(0.0), 1.0, 4, &Default::default()).unwrap();
        let d = r.sequence.delays();
        for (got, want) in d.iter().zip([1.8412, 0.590, 0.419]) {
            assert!((got - want).abs() < 0.005, "{d:?}");
        }
        for (got, want) in r.diagnostics.per_kick_minima.iter().zip([0.4181, 0.3263, 0.2555, 0.2099]) {
            assert!((got - want).abs() < 0.002);
        }
        assert!((resimulate(&ModelSpec::classical(0.0), &r).unwrap() - r.l_min).abs() < 1e-12);
    }

    #[test]
    fn minima_decrease() {
        let r = accumulative_schedule(&ModelSpec::quantum(0.0), 1.0, 6, &Default::default()).unwrap();
        let m = &r.diagnostics.per_kick_minima;
        assert!(m.windows(2).all(|w| w[1] < w[0]), "{m:?}");
    }

    #[test]
    fn revival_shift_leaves_zero_temperature_minima_unchanged() {
        let spec = ModelSpec::quantum(0.0);
        let plain = accumulative_schedule(&spec, 1.0, 3, &Default::default()).unwrap();
        let opts = AccumulativeOptions {
            revival_shift: true,
            ..Default::default()
        };
        let shifted = accumulative_schedule(&spec, 1.0, 3, &opts).unwrap();
        for (a, b) in plain
            .diagnostics
            .per_kick_minima
            .iter()
            .zip(&shifted.diagnostics.per_kick_minima)
        {
            assert!((a - b).abs() < 1e-9);
        }
        assert!(accumulative_schedule(&ModelSpec::classical(0.0), 1.0, 2, &opts).is_err());
    }

    #[test]
    fn zero_kicks_is_an_error() {
        assert!(accumulative_schedule(&ModelSpec::classical(0.0), 1.0, 0, &Default::default()).is_err());
    }
}
