//! Quantum dynamics of lattice-periodic atomic states.
//!
//! A state with quasimomentum `ν₀` is `Ψ(x) = (2π)^{-1/2} e^{iν₀x} Σ cₙ e^{inx}`
//! with `n ∈ [-n_max, n_max]`. Between kicks `cₙ` acquires the phase
//! `exp(−i(n + ν₀)²τ/2)`; a kick of strength `P` multiplies `Ψ` by
//! `exp(iP cos x)`, which in the momentum basis is the Bessel convolution
//! `cₙ → Σₘ i^{n−m} J_{n−m}(P) cₘ`. Times are in units where the free
//! evolution of any `ν₀ = 0` state repeats after `4π`.

mod closed;
mod kernel;
mod run;
mod state;
mod thermal;

pub use closed::{
    localization_closed_single_kick, localization_closed_thermal, localization_short_time,
    REVIVAL_PERIOD,
};
pub use kernel::{basis_half_width, kick_bandwidth, KickKernel};
pub use run::{run_quantum, spatial_density_quantum, QuantumOptions};
pub use state::{QuantumState, EDGE_OCCUPANCY_LIMIT};
pub use thermal::{
    momentum_window, thermal_average, QuadratureSpec, ThermalAverage, ThermalMember,
    ThermalQuantumEnsemble,
};
