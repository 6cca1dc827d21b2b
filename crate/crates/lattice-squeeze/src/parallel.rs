//! Rayon drivers for the embarrassingly parallel parts of the strategies.
//! Reductions are order-independent, so results do not depend on the
//! thread count.

use lattice_squeeze_core::strategies::{
    optimize_two_kick_quantum, FixedNOptions, FixedNProblem, ModelSpec, ScheduleResult, TwoKickOptions,
};
use rayon::prelude::*;

use crate::Result;

/// Multistart fixed-`N` search with starts refined in parallel.
pub fn optimize_fixed_n(
    spec: &ModelSpec,
    strength: f64,
    kicks: usize,
    options: &FixedNOptions,
) -> Result<ScheduleResult> {
    let problem = FixedNProblem::new(*spec, strength, kicks, *options)?;
    let outcomes = problem.starts().par_iter().map(|s| problem.refine(s)).collect();
    Ok(problem.finish(outcomes)?)
}

/// Two-kick quantum optimum for every strength, in input order.
pub fn two_kick_curve(sigma: f64, strengths: &[f64], options: &TwoKickOptions) -> Result<Vec<(f64, ScheduleResult)>> {
    strengths
        .par_iter()
        .map(|&p| Ok((p, optimize_two_kick_quantum(sigma, p, options)?)))
        .collect()
}

/// Runs `f` on a pool of `threads` workers (all cores when `None`).
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    Ok(builder.build()?.install(f))
}
