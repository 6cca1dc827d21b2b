use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::accumulative::{accumulative_schedule, AccumulativeOptions};
use super::model::{Model, ModelSpec};
use super::result::{Diagnostics, ScheduleResult, StartRecord};
use crate::error::{Error, Result};
use crate::minimize::{nelder_mead, NelderMeadOptions};
use crate::pulse::PulseSequence;

/// Controls for the fixed-`N` multistart search.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FixedNOptions {
    /// Latin-hypercube starts (the accumulative seed comes on top).
    pub starts: usize,
    /// Upper edge of the start box for every delay and the final time.
    pub delay_upper: f64,
    /// Total objective evaluations shared evenly across starts.
    pub budget: usize,
    pub seed: u64,
    /// Also start from the accumulative schedule, so the result is never
    /// worse than it.
    pub seed_with_accumulative: bool,
    /// Let individual kick strengths vary at fixed total strength.
    pub vary_strengths: bool,
    /// Initial simplex edge.
    pub simplex_step: f64,
}

impl Default for FixedNOptions {
    fn default() -> Self {
        Self {
            starts: 64,
            delay_upper: 4.0,
            budget: 64 * 2000,
            seed: 0,
            seed_with_accumulative: true,
            vary_strengths: false,
            simplex_step: 0.2,
        }
    }
}

/// Result of refining one start.
#[derive(Debug, Clone, PartialEq)]
pub struct StartOutcome {
    pub start: Vec<f64>,
    /// Refined parameters, already projected onto the feasible set.
    pub end: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
}

/// Search over `N` kicks: `N − 1` delays plus the final free-evolution time,
/// all non-negative (and, with `vary_strengths`, `N` relative strengths).
///
/// The search is split into [`starts`](Self::starts),
/// [`refine`](Self::refine) and [`finish`](Self::finish) so that callers may
/// refine starts concurrently; `finish` is independent of outcome order.
#[derive(Debug, Clone)]
pub struct FixedNProblem {
    spec: ModelSpec,
    strength: f64,
    kicks: usize,
    options: FixedNOptions,
    base: Model,
    seed_start: Option<Vec<f64>>,
}

impl FixedNProblem {
    pub fn new(spec: ModelSpec, strength: f64, kicks: usize, options: FixedNOptions) -> Result<Self> {
        if kicks == 0 {
            return Err(Error::InvalidSequence("fixed-N search needs at least one kick"));
        }
        if options.budget == 0 {
            return Err(Error::Domain {
                what: "evaluation budget",
                value: 0.0,
            });
        }
        if !(strength >= 0.0) || !strength.is_finite() {
            return Err(Error::Domain {
                what: "kick strength",
                value: strength,
            });
        }
        let base = spec.build(strength * kicks as f64)?;
        let seed_start = if options.seed_with_accumulative {
            let acc = accumulative_schedule(&spec, strength, kicks, &AccumulativeOptions::default())?;
            let mut x = acc.delays_with_final();
            if options.vary_strengths {
                x.extend(core::iter::repeat(1.0).take(kicks));
            }
            Some(x)
        } else {
            None
        };
        Ok(Self {
            spec,
            strength,
            kicks,
            options,
            base,
            seed_start,
        })
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn options(&self) -> &FixedNOptions {
        &self.options
    }

    /// Number of timing parameters (`N − 1` delays and the final time).
    pub fn timing_dimension(&self) -> usize {
        self.kicks
    }

    /// Accumulative seed (if enabled) followed by the Latin-hypercube starts.
    pub fn starts(&self) -> Vec<Vec<f64>> {
        let m = self.options.starts;
        let n = self.kicks;
        let mut rng = ChaCha8Rng::seed_from_u64(self.options.seed);
        let mut lhs = vec![vec![0.0; n]; m];
        let mut strata: Vec<usize> = (0..m).collect();
        for j in 0..n {
            strata.shuffle(&mut rng);
            for (row, &s) in lhs.iter_mut().zip(&strata) {
                let u: f64 = rng.random();
                row[j] = (s as f64 + u) / m as f64 * self.options.delay_upper;
            }
        }
        if self.options.vary_strengths {
            for row in &mut lhs {
                row.extend(core::iter::repeat(1.0).take(n));
            }
        }
        let mut out = Vec::with_capacity(m + 1);
        out.extend(self.seed_start.iter().cloned());
        out.extend(lhs);
        out
    }

    /// Evaluations allowed per start.
    pub fn per_start_budget(&self) -> usize {
        let count = self.options.starts + usize::from(self.seed_start.is_some());
        (self.options.budget / count.max(1)).max(1)
    }

    /// `L` for raw parameters; negative timings are treated as zero.
    pub fn objective(&self, x: &[f64]) -> f64 {
        let p = self.project(x);
        self.evaluate_projected(&p).unwrap_or(f64::INFINITY)
    }

    /// Nelder-Mead refinement of one start, restarted once from its result.
    pub fn refine(&self, start: &[f64]) -> StartOutcome {
        let budget = self.per_start_budget();
        let mut opts = NelderMeadOptions {
            initial_step: self.options.simplex_step,
            max_evaluations: budget,
            ..Default::default()
        };
        let first = nelder_mead(|x| self.objective(x), start, &opts);
        let mut evaluations = first.evaluations;
        let mut best = (self.project(&first.x), first.value);
        if evaluations < budget {
            opts.initial_step = 0.5 * self.options.simplex_step;
            opts.max_evaluations = budget - evaluations;
            let again = nelder_mead(|x| self.objective(x), &best.0, &opts);
            evaluations += again.evaluations;
            if again.value < best.1 {
                best = (self.project(&again.x), again.value);
            }
        }
        // timings that ended on or next to the boundary are tried at zero
        for i in 0..self.kicks {
            if best.0[i] > 0.0 && best.0[i] < 1e-4 {
                let mut trial = best.0.clone();
                trial[i] = 0.0;
                let v = self.objective(&trial);
                evaluations += 1;
                if v <= best.1 {
                    best = (trial, v);
                }
            }
        }
        StartOutcome {
            start: start.to_vec(),
            end: best.0,
            value: best.1,
            evaluations,
        }
    }

    /// Best outcome (lowest `L`, ties broken by the lexicographically
    /// smallest parameter vector), re-simulated from scratch.
    pub fn finish(&self, outcomes: Vec<StartOutcome>) -> Result<ScheduleResult> {
        let best = outcomes
            .iter()
            .min_by(|a, b| {
                a.value
                    .total_cmp(&b.value)
                    .then_with(|| lexicographic(&a.end, &b.end))
            })
            .ok_or(Error::InvalidSequence("no starts to choose from"))?;
        let (sequence, t_min) = self.schedule(&best.end)?;
        let l_min = super::model::evaluate(&self.spec, &sequence, t_min)?;
        let evaluations = outcomes.iter().map(|o| o.evaluations).sum();
        let optimizer_trace = outcomes
            .into_iter()
            .map(|o| StartRecord {
                start: o.start,
                end: o.end,
                value: o.value,
                evaluations: o.evaluations,
            })
            .collect();
        Ok(ScheduleResult {
            sequence,
            l_min,
            t_min,
            engine: self.spec.engine(),
            diagnostics: Diagnostics {
                evaluations,
                per_kick_minima: Vec::new(),
                optimizer_trace,
            },
        })
    }

    fn project(&self, x: &[f64]) -> Vec<f64> {
        x.iter().map(|&v| if v > 0.0 { v } else { 0.0 }).collect()
    }

    fn strengths(&self, p: &[f64]) -> Vec<f64> {
        let total = self.strength * self.kicks as f64;
        if !self.options.vary_strengths {
            return vec![self.strength; self.kicks];
        }
        let rel = &p[self.kicks..];
        let sum: f64 = rel.iter().sum();
        if sum == 0.0 {
            return vec![self.strength; self.kicks];
        }
        rel.iter().map(|r| total * r / sum).collect()
    }

    fn evaluate_projected(&self, p: &[f64]) -> Result<f64> {
        let strengths = self.strengths(p);
        let mut model = self.base.clone();
        for (i, &s) in strengths.iter().enumerate() {
            if i > 0 {
                model.advance(p[i - 1])?;
            }
            model.kick(s)?;
        }
        Ok(model.localization_after(p[self.kicks - 1]))
    }

    fn schedule(&self, p: &[f64]) -> Result<(PulseSequence, f64)> {
        let strengths = self.strengths(p);
        let delays = &p[..self.kicks - 1];
        let seq = PulseSequence::from_delays_and_strengths(&strengths, delays)?;
        let t_min = delays.iter().sum::<f64>() + p[self.kicks - 1];
        Ok((seq, t_min))
    }
}

fn lexicographic(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or_else(|| a.len().cmp(&b.len()))
}

/// Sequential multistart search for the best `N`-kick schedule.
pub fn optimize_fixed_n(
    spec: &ModelSpec,
    strength: f64,
    kicks: usize,
    options: &FixedNOptions,
) -> Result<ScheduleResult> {
    let problem = FixedNProblem::new(*spec, strength, kicks, *options)?;
    let outcomes = problem.starts().iter().map(|s| problem.refine(s)).collect();
    problem.finish(outcomes)
}
