use crate::math::{cos, exp, sin, PI};
use crate::special::bessel_j1;

/// Full revival period of free evolution for `ν₀ = 0`.
pub const REVIVAL_PERIOD: f64 = 4.0 * PI;

/// Single-kick localization factor for one initial momentum `p₀`:
/// `L = 1 − cos(p₀τ) J₁(2P sin(τ/2))`.
pub fn localization_closed_single_kick(tau: f64, strength: f64, p0: f64) -> f64 {
    1.0 - cos(p0 * tau) * bessel_j1(2.0 * strength * sin(0.5 * tau))
}

/// Thermally averaged single-kick localization factor:
/// `L = 1 − exp(−τ²σ²/2) J₁(2P sin(τ/2))`.
pub fn localization_closed_thermal(tau: f64, strength: f64, sigma: f64) -> f64 {
    1.0 - exp(-0.5 * tau * tau * sigma * sigma) * bessel_j1(2.0 * strength * sin(0.5 * tau))
}

/// Short-time form of [`localization_closed_thermal`], identical to the
/// classical closed form with the classical time `Pτ`.
pub fn localization_short_time(tau: f64, strength: f64, sigma: f64) -> f64 {
    1.0 - exp(-0.5 * sigma * sigma * tau * tau) * bessel_j1(strength * tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::TAU;

    #[test]
    fn single_kick_examples() {
        assert_eq!(localization_closed_single_kick(0.0, 3.0, 0.4), 1.0);
        assert!((localization_closed_single_kick(TAU, 3.0, 0.0) - 1.0).abs() < 1e-12);
        // thermal form at σ = 0 equals the p₀ = 0 form
        for tau in [0.1, 1.0, 3.3, 9.0] {
            assert_eq!(
                localization_closed_thermal(tau, 0.5, 0.0),
                localization_closed_single_kick(tau, 0.5, 0.0)
            );
        }
    }

    #[test]
    fn large_width_washes_out_contrast() {
        assert!((localization_closed_thermal(1.0, 10.0, 50.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn short_time_limit() {
        for strength in [0.5, 1.0, 5.0, 10.0] {
            for sigma in [0.0, 0.5] {
                for i in 0..=100 {
                    let tau = 0.1 * i as f64 / 100.0;
                    let d = localization_closed_thermal(tau, strength, sigma)
                        - localization_short_time(tau, strength, sigma);
                    assert!(d.abs() <= 1e-3, "P={strength} σ={sigma} τ={tau} Δ={d}");
                }
            }
        }
    }
}
