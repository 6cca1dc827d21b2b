//! Bessel functions of the first kind of integer order.
//!
//! Every order needed by the kick operator is produced in one pass of
//! Miller's backward recurrence, normalized with the Neumann sum
//! `J₀ + 2 Σ J₂ₖ = 1`. Backward recurrence is stable for the minimal solution,
//! so small high-order values keep their relative accuracy.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::{ceil, sqrt};

const RESCALE_ABOVE: f64 = 1e250;
const RESCALE_BY: f64 = 1e-250;

/// `[J₀(x), J₁(x), …, J_order_max(x)]`.
pub fn bessel_j_orders(order_max: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; order_max + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let ax = x.abs();
    let scale = order_max.max(ceil(ax) as usize);
    // Start far enough above both the requested order and the turning point
    // that the seeded error has decayed below double precision.
    let mut start = scale + 30 + ceil(sqrt(60.0 * scale as f64)) as usize;
    if start % 2 == 1 {
        start += 1;
    }

    let two_over_x = 2.0 / ax;
    let mut j_next = 0.0_f64; // J_{k+1}
    let mut j_curr = 1e-300_f64; // J_k, arbitrary seed
    let mut even_sum = 0.0_f64; // Σ J_{2k}, k ≥ 1

    let mut k = start;
    while k > 0 {
        let j_prev = (k as f64) * two_over_x * j_curr - j_next;
        j_next = j_curr;
        j_curr = j_prev;
        k -= 1;
        if k % 2 == 0 && k > 0 {
            even_sum += j_curr;
        }
        if k <= order_max {
            out[k] = j_curr;
        }
        if j_curr.abs() > RESCALE_ABOVE {
            j_curr *= RESCALE_BY;
            j_next *= RESCALE_BY;
            even_sum *= RESCALE_BY;
            for v in out.iter_mut().skip(k) {
                *v *= RESCALE_BY;
            }
        }
    }

    let norm = j_curr + 2.0 * even_sum;
    for v in &mut out {
        *v /= norm;
    }
    if x < 0.0 {
        for (n, v) in out.iter_mut().enumerate() {
            if n % 2 == 1 {
                *v = -*v;
            }
        }
    }
    out
}

/// `J_n(x)` for any integer order, using `J₋ₙ = (−1)ⁿ Jₙ`.
pub fn bessel_j(n: i64, x: f64) -> f64 {
    let order = n.unsigned_abs() as usize;
    let v = bessel_j_orders(order, x)[order];
    if n < 0 && order % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `J₁(x)`.
pub fn bessel_j1(x: f64) -> f64 {
    bessel_j_orders(1, x)[1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{cos, sin, TAU};

    /// `J_n(x) = (1/2π) ∫₀^{2π} cos(nθ − x sin θ) dθ`. The integrand is periodic
    /// and entire, so the trapezoid rule converges geometrically.
    fn integral_oracle(n: i64, x: f64) -> f64 {
        let m = 4096;
        let h = TAU / m as f64;
        let s: f64 = (0..m)
            .map(|i| {
                let t = i as f64 * h;
                cos(n as f64 * t - x * sin(t))
            })
            .sum();
        s / m as f64
    }

    #[test]
    fn zero_argument_is_kronecker_delta() {
        let j = bessel_j_orders(5, 0.0);
        assert_eq!(j, [1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn matches_integral_representation() {
        for &x in &[1e-6, 0.3, 1.0, 1.8412, 2.0, 7.5, 10.0, 20.0, 49.0, 100.0] {
            let j = bessel_j_orders(120, x);
            for n in 0..=120 {
                let oracle = integral_oracle(n as i64, x);
                let tol = 5e-14 + 1e-13 * oracle.abs();
                assert!(
                    (j[n] - oracle).abs() < tol,
                    "J_{n}({x}) = {} vs {oracle}",
                    j[n]
                );
            }
        }
    }

    #[test]
    fn matches_libm_relative() {
        for &x in &[0.5, 1.0, 3.0, 10.0, 25.0] {
            let j = bessel_j_orders(60, x);
            for n in 0..=60 {
                let reference = libm::jn(n as i32, x);
                if reference.abs() > 1e-200 {
                    let rel = ((j[n] - reference) / reference).abs();
                    assert!(rel < 1e-12, "J_{n}({x}) rel err {rel}");
                }
            }
        }
    }

    #[test]
    fn tiny_high_orders_keep_relative_accuracy() {
        // J_20(1) = Σ (−1)^k (1/2)^{2k+20} / (k! (k+20)!)
        let mut series = 0.0;
        let mut term = 1.0;
        for i in 1..=20 {
            term *= 0.5 / i as f64;
        }
        for k in 0..20 {
            series += term;
            term *= -0.25 / ((k + 1) as f64 * (k + 21) as f64);
        }
        let j = bessel_j(20, 1.0);
        assert!(((j - series) / series).abs() < 1e-13);
    }

    #[test]
    fn negative_orders_and_arguments() {
        assert!((bessel_j(-3, 2.0) + bessel_j(3, 2.0)).abs() < 1e-16);
        assert!((bessel_j(-4, 2.0) - bessel_j(4, 2.0)).abs() < 1e-16);
        assert!((bessel_j1(-2.0) + bessel_j1(2.0)).abs() < 1e-16);
        assert!((bessel_j(2, -2.0) - bessel_j(2, 2.0)).abs() < 1e-16);
    }

    #[test]
    fn first_maximum_of_j1() {
        // J₁'(x) = J₀(x) − J₁(x)/x vanishes at 1.841183781...
        let x = 1.841_183_781_340_659;
        let j = bessel_j_orders(1, x);
        assert!((j[0] - j[1] / x).abs() < 1e-14);
        assert!((j[1] - 0.581_865_224_281_596).abs() < 1e-12);
    }
}
