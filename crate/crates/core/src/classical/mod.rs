//! Classical δ-kicked dynamics of a thermal ensemble on the periodic cell.
//!
//! In classical units a unit kick maps `v → v − sin x` and free flight maps
//! `x → x + v τ (mod 2π)`. Positions live in `[-π, π)`.

mod closed;
mod density;
mod ensemble;
mod run;

pub use closed::{localization_factor_closed, rainbow_offset, rainbow_positions};
pub use density::{spatial_density, trajectory_branches, CAUSTIC_EPSILON};
pub use ensemble::ClassicalEnsemble;
pub use run::{phase_space_snapshots, propagate_trace, run_classical};
