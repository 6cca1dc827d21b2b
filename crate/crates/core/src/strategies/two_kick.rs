use alloc::vec::Vec;

use super::model::{evaluate, ModelSpec};
use super::result::{Diagnostics, ScheduleResult, StartRecord};
use crate::error::{Error, Result};
use crate::math::{ceil, PI};
use crate::minimize::{nelder_mead, NelderMeadOptions};
use crate::pulse::PulseSequence;

/// Controls for [`optimize_two_kick_quantum`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TwoKickOptions {
    /// Both the delay and the final evolution time are searched in
    /// `[0, window]`.
    pub window: f64,
    /// Grid points per unit of `P · window`, per axis.
    pub grid_density: f64,
    /// Smallest grid size per axis.
    pub min_grid: usize,
    /// Number of best grid points refined by Nelder-Mead.
    pub refine: usize,
    /// Gauss-Legendre nodes per momentum cell when `sigma > 0`.
    pub nodes_per_cell: usize,
}

impl Default for TwoKickOptions {
    fn default() -> Self {
        Self {
            window: PI,
            grid_density: 16.0,
            min_grid: 200,
            refine: 3,
            nodes_per_cell: 32,
        }
    }
}

/// Best pair of identical quantum kicks of strength `strength`: a grid scan
/// over (delay, final time) followed by simplex refinement of the best grid
/// points, all inside the search window.
pub fn optimize_two_kick_quantum(
    sigma: f64,
    strength: f64,
    options: &TwoKickOptions,
) -> Result<ScheduleResult> {
    if !(options.window > 0.0) {
        return Err(Error::Domain {
            what: "search window",
            value: options.window,
        });
    }
    let spec = ModelSpec::Quantum {
        sigma,
        nodes_per_cell: options.nodes_per_cell,
        tail_mass: 1e-12,
    };
    let mut first = spec.build(2.0 * strength)?;
    first.kick(strength)?;

    let w = options.window;
    let g = options.min_grid.max(ceil(w * strength * options.grid_density) as usize).max(2);
    let h = w / (g - 1) as f64;
    let mut grid = Vec::with_capacity(g * g);
    for i in 0..g {
        let d = h * i as f64;
        let mut m = first.clone();
        m.advance(d)?;
        m.kick(strength)?;
        for j in 0..g {
            let f = h * j as f64;
            grid.push((m.localization_after(f), d, f));
        }
    }
    grid.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.total_cmp(&b.2)));

    let clamp = |v: f64| v.clamp(0.0, w);
    let objective = |x: &[f64]| -> f64 {
        let mut m = first.clone();
        if m.advance(clamp(x[0])).is_err() || m.kick(strength).is_err() {
            return f64::INFINITY;
        }
        m.localization_after(clamp(x[1]))
    };
    let opts = NelderMeadOptions {
        initial_step: 2.0 * h,
        ..Default::default()
    };
    let mut trace = Vec::new();
    let mut evaluations = g * g;
    for &(value, d, f) in grid.iter().take(options.refine.max(1)) {
        let m = nelder_mead(objective, &[d, f], &opts);
        evaluations += m.evaluations;
        let end = [clamp(m.x[0]), clamp(m.x[1])];
        let (end, value) = if m.value <= value { (end.to_vec(), m.value) } else { ([d, f].to_vec(), value) };
        trace.push(StartRecord {
            start: [d, f].to_vec(),
            end,
            value,
            evaluations: m.evaluations,
        });
    }
    let best = trace
        .iter()
        .min_by(|a, b| a.value.total_cmp(&b.value).then(a.end[0].total_cmp(&b.end[0])))
        .ok_or(Error::InvalidSequence("empty search"))?
        .clone();
    let sequence = PulseSequence::from_delays(strength, &best.end[..1])?;
    let t_min = best.end[0] + best.end[1];
    let l_min = evaluate(&spec, &sequence, t_min)?;
    Ok(ScheduleResult {
        sequence,
        l_min,
        t_min,
        engine: spec.engine(),
        diagnostics: Diagnostics {
            evaluations,
            per_kick_minima: Vec::new(),
            optimizer_trace: trace,
        },
    })
}

/// [`optimize_two_kick_quantum`] for each strength in turn.
pub fn two_kick_curve(
    sigma: f64,
    strengths: &[f64],
    options: &TwoKickOptions,
) -> Result<Vec<(f64, ScheduleResult)>> {
    strengths
        .iter()
        .map(|&p| optimize_two_kick_quantum(sigma, p, options).map(|r| (p, r)))
        .collect()
}
