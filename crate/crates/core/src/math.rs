//! `f64` transcendental functions for `no_std`, backed by `libm`.

pub(crate) use core::f64::consts::{PI, SQRT_2, TAU};

pub(crate) use libm::{acos, ceil, cos, erfc, exp, floor, sin, sqrt};

#[inline]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub(crate) fn sin_cos(x: f64) -> (f64, f64) {
    libm::sincos(x)
}

/// Reduces a phase into `[-π, π)`.
#[inline]
pub(crate) fn wrap_phase(x: f64) -> f64 {
    let mut r = x - TAU * floor((x + PI) / TAU);
    // floor can land one period off when x + π rounds onto a multiple of 2π
    if r >= PI {
        r -= TAU;
    } else if r < -PI {
        r += TAU;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_maps_pi_to_minus_pi() {
        assert_eq!(wrap_phase(PI), -PI);
        assert_eq!(wrap_phase(-PI), -PI);
        assert_eq!(wrap_phase(0.5), 0.5);
        assert!(wrap_phase(4.0 * PI).abs() < 1e-15);
    }
}
