use alloc::vec::Vec;

use crate::pulse::{Engine, PulseSequence};

/// A pulse schedule with its post-sequence localization minimum.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScheduleResult {
    pub sequence: PulseSequence,
    /// Minimal `L` after the last kick.
    #[cfg_attr(feature = "serde", serde(rename = "L_min"))]
    pub l_min: f64,
    /// Time at which `l_min` is reached.
    pub t_min: f64,
    pub engine: Engine,
    pub diagnostics: Diagnostics,
}

impl ScheduleResult {
    /// Delays between kicks followed by the final free-evolution time.
    pub fn delays_with_final(&self) -> Vec<f64> {
        let mut d = self.sequence.delays();
        d.push(self.t_min - self.sequence.last_time().unwrap_or(0.0));
        d
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Diagnostics {
    pub evaluations: usize,
    /// `L` minimum after each kick (accumulative schedules).
    pub per_kick_minima: Vec<f64>,
    /// Local refinements, in start order.
    pub optimizer_trace: Vec<StartRecord>,
}

/// Outcome of one local refinement of a multistart search.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StartRecord {
    pub start: Vec<f64>,
    pub end: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
}
