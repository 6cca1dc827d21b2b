//! Engines for squeezing an ensemble of cold atoms with a pulsed
//! (delta-kicked) optical lattice.
//!
//! The crate is `no_std` and needs only `alloc`. It carries the classical
//! phase-space dynamics, the quantum dynamics in a truncated momentum basis,
//! and the pulse-scheduling strategies built on top of both. All simulation
//! entry points take dimensionless inputs; [`params`] converts laboratory
//! quantities into them.
//!
//! Classical and quantum runs use different time units. A classical time
//! `τ_cl` corresponds to the quantum time `τ_qm = τ_cl / P`; nothing in this
//! crate converts between them implicitly.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
mod math;

pub mod classical;
pub mod minimize;
pub mod params;
pub mod profile;
pub mod pulse;
pub mod quadrature;
pub mod quantum;
pub mod special;
pub mod strategies;
pub mod summation;
pub mod trace;

pub use error::{Error, Result};
pub use params::{PhysicalParams, ThermalSpec};
pub use profile::DensityProfile;
pub use pulse::{Engine, Kick, PulseSequence};
pub use trace::{LocalizationTrace, TraceSample};
