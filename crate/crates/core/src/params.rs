//! Laboratory parameters and their reduction to dimensionless widths and
//! kick strengths.
//!
//! This is the only place physical units appear. With the pulse fluence
//! `F = ∫V dt`:
//!
//! * classical width `σ_cl = √(k_B T m) / (2 k_l F)`
//! * quantum width `σ_qm = √(k_B T m) / (2 ħ k_l)`
//! * quantum kick strength `P = F / ħ`
//!
//! so that `σ_cl = σ_qm / P` and a classical time equals `P` times the
//! corresponding quantum time.

use crate::error::{Error, Result};
use crate::math::sqrt;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Mass of a ¹³³Cs atom, kg.
pub const CESIUM_MASS: f64 = 2.2069e-25;
/// Wavelength of the cesium D2 line, m.
pub const CESIUM_D2_WAVELENGTH: f64 = 852e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PhysicalParams {
    /// kg
    pub atomic_mass: f64,
    /// Laser wavenumber `k_l`, 1/m.
    pub laser_wavenumber: f64,
    /// Detuning `Δ_l = ω₀ − ω_l`, rad/s. Positive for a red-detuned lattice.
    pub detuning: f64,
    /// Peak Rabi frequency, rad/s.
    pub rabi_frequency: f64,
    /// K
    pub temperature: f64,
    /// Pulse fluence `∫V(t) dt`, J·s.
    pub pulse_fluence: f64,
}

impl PhysicalParams {
    /// Cesium in a lattice formed at 852 nm.
    pub fn cesium(temperature: f64, pulse_fluence: f64) -> Self {
        Self {
            atomic_mass: CESIUM_MASS,
            laser_wavenumber: core::f64::consts::TAU / CESIUM_D2_WAVELENGTH,
            detuning: core::f64::consts::TAU * 1e9,
            rabi_frequency: core::f64::consts::TAU * 1e7,
            temperature,
            pulse_fluence,
        }
    }

    pub fn validate(&self) -> Result<()> {
        positive("atomic mass", self.atomic_mass)?;
        positive("laser wavenumber", self.laser_wavenumber)?;
        // blue detuning is out of scope
        positive("detuning", self.detuning)?;
        positive("pulse fluence", self.pulse_fluence)?;
        non_negative("rabi frequency", self.rabi_frequency)?;
        non_negative("temperature", self.temperature)?;
        Ok(())
    }

    fn thermal_momentum(&self) -> f64 {
        sqrt(BOLTZMANN * self.temperature * self.atomic_mass)
    }
}

fn positive(what: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain { what, value })
    }
}

fn non_negative(what: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain { what, value })
    }
}

/// `σ_cl = √(k_B T m) / (2 k_l ∫V dt)`.
pub fn classical_sigma_from_physical(params: &PhysicalParams) -> Result<f64> {
    params.validate()?;
    Ok(params.thermal_momentum() / (2.0 * params.laser_wavenumber * params.pulse_fluence))
}

/// `σ_qm = √(k_B T m) / (2 ħ k_l)`.
pub fn quantum_sigma_from_physical(params: &PhysicalParams) -> Result<f64> {
    params.validate()?;
    Ok(params.thermal_momentum() / (2.0 * HBAR * params.laser_wavenumber))
}

/// Lattice depth `V = ħ Ω² / (8 Δ_l)`, J.
pub fn potential_depth_from_rabi(params: &PhysicalParams) -> Result<f64> {
    params.validate()?;
    let omega = params.rabi_frequency;
    Ok(HBAR * omega * omega / (8.0 * params.detuning))
}

/// Dimensionless quantum kick strength `P = ∫V dt / ħ`.
pub fn kick_strength_from_physical(params: &PhysicalParams) -> Result<f64> {
    params.validate()?;
    Ok(params.pulse_fluence / HBAR)
}

/// Classical time corresponding to a quantum time for kicks of strength `P`.
pub fn classical_time_from_quantum(tau_quantum: f64, strength: f64) -> f64 {
    strength * tau_quantum
}

/// Dimensionless thermal width of the initial velocity (classical) or
/// momentum (quantum) distribution. Zero is the zero-temperature limit.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ThermalSpec {
    sigma: f64,
}

impl ThermalSpec {
    pub fn new(sigma: f64) -> Result<Self> {
        non_negative("thermal width", sigma)?;
        Ok(Self { sigma })
    }

    pub const fn zero_temperature() -> Self {
        Self { sigma: 0.0 }
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn is_zero_temperature(&self) -> bool {
        self.sigma == 0.0
    }
}
