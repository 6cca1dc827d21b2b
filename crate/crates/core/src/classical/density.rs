use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{ceil, cos, exp, floor, sin, sqrt, PI, TAU};
use crate::profile::DensityProfile;
use crate::quadrature::{gauss_legendre, Rule};
use crate::summation::NeumaierSum;

/// Branch contributions with `|1 − τ cos x₀| < ε` are capped at `1/(2π ε)`.
pub const CAUSTIC_EPSILON: f64 = 1e-8;

const BISECTION_TOLERANCE: f64 = 1e-12;
/// Velocities further than this many widths from the ballistic band carry
/// negligible weight.
const VELOCITY_CUTOFF_WIDTHS: f64 = 10.0;
const VELOCITY_REL_TOLERANCE: f64 = 1e-8;
const MAX_VELOCITY_PANELS: usize = 1 << 22;

/// Initial positions `x₀ ∈ [-π, π)` that reach `x` at time `τ` after a
/// zero-temperature unit kick, i.e. roots of `x₀ − τ sin x₀ ≡ x (mod 2π)`.
///
/// Roots are bracketed on a uniform grid of `4⌈τ⌉ + 64` cells and refined by
/// bisection.
pub fn trajectory_branches(x: f64, tau: f64) -> Vec<f64> {
    let cells = 4 * ceil(tau.abs()) as usize + 64;
    let h = TAU / cells as f64;
    let nodes: Vec<f64> = (0..=cells).map(|i| -PI + h * i as f64).collect();
    let flow = |x0: f64| x0 - tau * sin(x0);
    let values: Vec<f64> = nodes.iter().map(|&x0| flow(x0)).collect();

    // x + 2πk must lie in the range of the flow map, which is within τ of [-π, π].
    let k_lo = ceil((-PI - tau.abs() - x) / TAU) as i64;
    let k_hi = floor((PI + tau.abs() - x) / TAU) as i64;

    let mut roots = Vec::new();
    for k in k_lo..=k_hi {
        let target = x + TAU * k as f64;
        for i in 0..cells {
            let (a, b) = (nodes[i], nodes[i + 1]);
            let (ga, gb) = (values[i] - target, values[i + 1] - target);
            if ga == 0.0 {
                // the right endpoint x₀ = π is the same point as -π
                roots.push(a);
            } else if ga * gb < 0.0 {
                roots.push(bisect(|t| flow(t) - target, a, b, ga));
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    while b - a > BISECTION_TOLERANCE {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Spatial density `f(x, τ)` after a single unit kick at `τ = 0` from a
/// uniform ensemble with thermal width `sigma`.
///
/// At `sigma = 0` the density is the branch sum
/// `f = (1/2π) Σ 1/|1 − τ cos x₀|`, capped near caustics (see
/// [`CAUSTIC_EPSILON`]). At `sigma > 0` it is the velocity marginal of the
/// phase-space density, `f(x) = (1/2π) ∫ ρ_σ(v + sin(x − vτ)) dv`, evaluated
/// with composite Gauss-Legendre panels refined until the relative change is
/// below `1e-8`.
pub fn spatial_density(tau: f64, sigma: f64, grid: &[f64]) -> Result<DensityProfile> {
    if !(tau >= 0.0) || !tau.is_finite() {
        return Err(Error::Domain {
            what: "density time",
            value: tau,
        });
    }
    if !(sigma >= 0.0) || !sigma.is_finite() {
        return Err(Error::Domain {
            what: "thermal width",
            value: sigma,
        });
    }
    let density = if sigma == 0.0 {
        grid.iter().map(|&x| branch_density(x, tau)).collect()
    } else {
        let panel = gauss_legendre(8);
        grid.iter()
            .map(|&x| thermal_density(x, tau, sigma, &panel))
            .collect::<Result<Vec<f64>>>()?
    };
    Ok(DensityProfile {
        grid: grid.to_vec(),
        density,
    })
}

fn branch_density(x: f64, tau: f64) -> f64 {
    let mut acc = NeumaierSum::new();
    for x0 in trajectory_branches(x, tau) {
        let jacobian = (1.0 - tau * cos(x0)).abs().max(CAUSTIC_EPSILON);
        acc.add(1.0 / jacobian);
    }
    acc.value() / TAU
}

fn thermal_density(x: f64, tau: f64, sigma: f64, panel: &Rule) -> Result<f64> {
    let half_width = 1.0 + VELOCITY_CUTOFF_WIDTHS * sigma;
    // The integrand varies on the scale σ / |d(v + sin(x − vτ))/dv| ≥ σ / (1 + τ).
    let mut panels = (ceil(2.0 * half_width * (1.0 + tau) / sigma) as usize).max(4);
    let integrate = |panels: usize| -> f64 {
        let h = 2.0 * half_width / panels as f64;
        let norm = 1.0 / (sqrt(TAU) * sigma * TAU);
        let mut acc = NeumaierSum::new();
        for p in 0..panels {
            let a = -half_width + h * p as f64;
            for (t, w) in panel.nodes.iter().zip(&panel.weights) {
                let v = a + 0.5 * h * (t + 1.0);
                let u = (v + sin(x - v * tau)) / sigma;
                acc.add(0.5 * h * w * exp(-0.5 * u * u));
            }
        }
        norm * acc.value()
    };
    let mut coarse = integrate(panels);
    loop {
        let fine = integrate(2 * panels);
        let change = (fine - coarse).abs();
        if change <= VELOCITY_REL_TOLERANCE * fine.abs() || fine == 0.0 {
            return Ok(fine);
        }
        panels *= 2;
        if panels > MAX_VELOCITY_PANELS {
            return Err(Error::Quadrature {
                achieved: change / fine.abs(),
                requested: VELOCITY_REL_TOLERANCE,
            });
        }
        coarse = fine;
    }
}
