//! Derivative-free minimizers used by the scheduling strategies.

use alloc::vec;
use alloc::vec::Vec;

/// A minimizer's best point, value and number of objective evaluations.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum<X> {
    pub x: X,
    pub value: f64,
    pub evaluations: usize,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search on `[a, b]` down to an interval of width `tol`.
pub fn golden_section<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Minimum<f64> {
    let (mut a, mut b) = (a, b);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut evaluations = 2;
    while (b - a).abs() > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        evaluations += 1;
    }
    let (x, value) = if fc <= fd { (c, fc) } else { (d, fd) };
    Minimum {
        x,
        value,
        evaluations,
    }
}

/// First local minimum of `f` on `[0, limit]`: scans forward in steps of
/// `step` until the value rises, then refines the bracket by golden section.
/// Returns `None` if `f` keeps decreasing up to `limit`.
pub fn first_local_minimum<F: FnMut(f64) -> f64>(
    mut f: F,
    step: f64,
    limit: f64,
    tol: f64,
) -> Option<Minimum<f64>> {
    let mut s = step;
    let mut cur = f(s);
    let mut evaluations = 2;
    if cur > f(0.0) {
        let mut m = golden_section(&mut f, 0.0, step, tol);
        m.evaluations += evaluations;
        return Some(m);
    }
    while s + step <= limit {
        let next = f(s + step);
        evaluations += 1;
        if next > cur {
            let mut m = golden_section(&mut f, s - step, s + step, tol);
            m.evaluations += evaluations;
            if cur < m.value {
                m.x = s;
                m.value = cur;
            }
            return Some(m);
        }
        cur = next;
        s += step;
    }
    None
}

/// Stopping rules for [`nelder_mead`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    /// Edge length of the initial simplex.
    pub initial_step: f64,
    /// Stop once the simplex values span less than this.
    pub f_tol: f64,
    /// ...and the simplex fits in a box of this size.
    pub x_tol: f64,
    pub max_evaluations: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            initial_step: 0.1,
            f_tol: 1e-12,
            x_tol: 1e-8,
            max_evaluations: 4000,
        }
    }
}

/// Nelder-Mead simplex minimization from `x0`.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    opts: &NelderMeadOptions,
) -> Minimum<Vec<f64>> {
    let n = x0.len();
    if n == 0 {
        return Minimum {
            x: Vec::new(),
            value: f(x0),
            evaluations: 1,
        };
    }
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += opts.initial_step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();
    let mut evaluations = n + 1;
    let mut centroid = vec![0.0; n];
    let point = |c: &[f64], worst: &[f64], t: f64| -> Vec<f64> {
        c.iter().zip(worst).map(|(ci, wi)| ci + t * (wi - ci)).collect()
    };

    while evaluations < opts.max_evaluations {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let spread = values[n] - values[0];
        let size = simplex[1..]
            .iter()
            .flat_map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if spread <= opts.f_tol && size <= opts.x_tol {
            break;
        }

        for (j, c) in centroid.iter_mut().enumerate() {
            *c = simplex[..n].iter().map(|v| v[j]).sum::<f64>() / n as f64;
        }
        let reflected = point(&centroid, &simplex[n], -1.0);
        let fr = f(&reflected);
        evaluations += 1;
        if fr < values[0] {
            let expanded = point(&centroid, &simplex[n], -2.0);
            let fe = f(&expanded);
            evaluations += 1;
            if fe < fr {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = reflected;
            values[n] = fr;
            continue;
        }
        let (contracted, fc) = if fr < values[n] {
            let p = point(&centroid, &simplex[n], -0.5);
            let v = f(&p);
            (p, v)
        } else {
            let p = point(&centroid, &simplex[n], 0.5);
            let v = f(&p);
            (p, v)
        };
        evaluations += 1;
        if fc < values[n].min(fr) {
            simplex[n] = contracted;
            values[n] = fc;
            continue;
        }
        let best = simplex[0].clone();
        for i in 1..=n {
            simplex[i] = point(&best, &simplex[i], 0.5);
            values[i] = f(&simplex[i]);
        }
        evaluations += n;
    }
    let best = (0..=n)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .unwrap_or(0);
    Minimum {
        x: simplex.swap_remove(best),
        value: values[best],
        evaluations,
    }
}
