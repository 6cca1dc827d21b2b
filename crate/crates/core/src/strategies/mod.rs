//! Pulse-schedule construction.
//!
//! Two strategies are provided. The accumulative scheduler kicks greedily
//! at each successive minimum of `L`. The fixed-`N` optimizer searches all
//! delay vectors of `N` kicks jointly. Both run on either engine through
//! [`ModelSpec`], which fixes a deterministic (noise-free) discretization so
//! that optimizer comparisons are exact.

mod accumulative;
pub mod benchmarks;
mod fixed_n;
mod model;
mod result;
mod two_kick;

pub use accumulative::{accumulative_schedule, AccumulativeOptions};
pub use fixed_n::{optimize_fixed_n, FixedNOptions, FixedNProblem, StartOutcome};
pub use model::{evaluate, resimulate, Model, ModelSpec};
pub use result::{Diagnostics, ScheduleResult, StartRecord};
pub use two_kick::{optimize_two_kick_quantum, two_kick_curve, TwoKickOptions};
