use crate::error::{Error, Result};
use crate::math::{acos, exp, sqrt, wrap_phase};
use crate::special::bessel_j1;

/// Thermal localization factor after a single unit kick at `τ = 0`:
/// `L(τ) = 1 − exp(−σ²τ²/2) J₁(τ)`.
pub fn localization_factor_closed(tau: f64, sigma: f64) -> f64 {
    1.0 - exp(-0.5 * sigma * sigma * tau * tau) * bessel_j1(tau)
}

/// Unwrapped rainbow offset `arccos(1/τ) − √(τ² − 1)`; the caustics sit at
/// `±` this value modulo `2π`.
pub fn rainbow_offset(tau: f64) -> Result<f64> {
    if !(tau >= 1.0) || !tau.is_finite() {
        return Err(Error::Domain {
            what: "rainbow time (must be ≥ 1)",
            value: tau,
        });
    }
    Ok(acos(1.0 / tau) - sqrt(tau * tau - 1.0))
}

/// Rainbow caustic positions after a single zero-temperature kick, as
/// `(x₊, x₋)` with `x± = ±(arccos(1/τ) − √(τ² − 1))` wrapped into `[-π, π)`.
pub fn rainbow_positions(tau: f64) -> Result<(f64, f64)> {
    let offset = rainbow_offset(tau)?;
    Ok((wrap_phase(offset), wrap_phase(-offset)))
}
