use lattice_squeeze_core::classical::{
    localization_factor_closed, rainbow_offset, rainbow_positions, run_classical, spatial_density,
    ClassicalEnsemble,
};
use lattice_squeeze_core::profile::uniform_grid;
use lattice_squeeze_core::trace::uniform_times;
use lattice_squeeze_core::PulseSequence;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use std::f64::consts::{PI, TAU};

fn histogram(xs: &[f64], bins: usize) -> Vec<usize> {
    let mut h = vec![0; bins];
    for &x in xs {
        let b = (((x + PI) / TAU) * bins as f64) as usize;
        h[b.min(bins - 1)] += 1;
    }
    h
}

#[test]
fn drift_preserves_uniform_phase_space() {
    let n = 400_000;
    let v_max = 2.0;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let x: Vec<f64> = (0..n).map(|_| -PI + TAU * rng.random::<f64>()).collect();
    let v: Vec<f64> = (0..n).map(|_| v_max * (2.0 * rng.random::<f64>() - 1.0)).collect();
    let mut e = ClassicalEnsemble::from_phase_space(x, v).unwrap();
    e.drift(3.7).unwrap();

    let (bx, bv) = (20, 20);
    let mut counts = vec![0usize; bx * bv];
    for (x, v) in e.positions().iter().zip(e.velocities()) {
        let i = (((x + PI) / TAU) * bx as f64) as usize;
        let j = (((v + v_max) / (2.0 * v_max)) * bv as f64) as usize;
        counts[i.min(bx - 1) * bv + j.min(bv - 1)] += 1;
    }
    let expected = n as f64 / (bx * bv) as f64;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let limit = ChiSquared::new((bx * bv - 1) as f64).unwrap().inverse_cdf(0.99);
    assert!(chi2 < limit, "χ² = {chi2}, 99% limit {limit}");
}

#[test]
fn monte_carlo_agrees_with_closed_form() {
    let n = 200_000;
    let times = uniform_times(6.0, 31);
    for sigma in [0.0, 0.2, 1.0] {
        let seq = PulseSequence::single(1.0).unwrap();
        let mut e = ClassicalEnsemble::sample_thermal(n, sigma, 5).unwrap();
        e.kick(1.0);
        let trace = run_classical(&seq, sigma, n, &times, 5).unwrap();
        for s in trace.samples() {
            let mut f = e.clone();
            f.drift(s.tau).unwrap();
            let (_, sd) = f.cos_statistics();
            let closed = localization_factor_closed(s.tau, sigma);
            assert!(
                (s.localization - closed).abs() <= 4.0 * sd / (n as f64).sqrt() + 1e-12,
                "σ={sigma} τ={}: {} vs {closed}",
                s.tau,
                s.localization
            );
        }
    }
}

#[test]
fn rainbows_move_with_unit_speed() {
    for tau in [50.0, 100.0] {
        let h = 1e-3;
        let d = (rainbow_offset(tau + h).unwrap().abs() - rainbow_offset(tau - h).unwrap().abs()) / (2.0 * h);
        assert!((d - 1.0).abs() < 1e-2, "τ={tau}: {d}");
    }
}

#[test]
fn rainbows_are_the_histogram_peaks() {
    let n = 2_000_000;
    let mut e = ClassicalEnsemble::sample_thermal(n, 0.0, 3).unwrap();
    e.kick(1.0);
    e.drift(3.0).unwrap();
    let bins = 400;
    let h = histogram(e.positions(), bins);
    let mut idx: Vec<usize> = (0..bins).collect();
    idx.sort_by_key(|&i| std::cmp::Reverse(h[i]));
    let centre = |i: usize| -PI + TAU * (i as f64 + 0.5) / bins as f64;
    let (a, b) = rainbow_positions(3.0).unwrap();
    let width = TAU / bins as f64;
    for target in [a, b] {
        assert!(
            idx[..2].iter().any(|&i| (centre(i) - target).abs() <= 1.5 * width),
            "no peak near {target}"
        );
    }
}

#[test]
fn thermal_density_matches_histogram_at_focus() {
    let sigma = 0.1;
    let n = 10_000_000;
    let bins = 64;
    let mut e = ClassicalEnsemble::sample_thermal(n, sigma, 18).unwrap();
    e.kick(1.0);
    e.drift(1.0).unwrap();
    let h = histogram(e.positions(), bins);

    let sub = 32;
    let width = TAU / bins as f64;
    let midpoints: Vec<f64> = (0..bins * sub)
        .map(|k| -PI + width * (k as f64 + 0.5) / sub as f64)
        .collect();
    let mid = spatial_density(1.0, sigma, &midpoints).unwrap();
    for (b, &count) in h.iter().enumerate() {
        let p: f64 = mid.density[b * sub..(b + 1) * sub].iter().sum::<f64>() * width / sub as f64;
        let expected = p * n as f64;
        let se = (n as f64 * p * (1.0 - p)).sqrt();
        assert!((count as f64 - expected).abs() <= 3.0 * se, "bin {b}: {count} vs {expected}");
    }

    let f = spatial_density(1.0, sigma, &uniform_grid(1024)).unwrap();
    // one finite peak at the centre
    let max = f.local_maxima();
    assert_eq!(max.len(), 1);
    assert!(f.grid[max[0]].abs() < 0.01);
    assert!(f.density[max[0]].is_finite());
    assert!((f.periodic_integral() - 1.0).abs() < 1e-6);
}

#[test]
fn thermal_density_has_twin_rainbows_after_focus() {
    let f = spatial_density(1.84, 0.1, &uniform_grid(1024)).unwrap();
    let max = f.local_maxima();
    assert_eq!(max.len(), 2, "{max:?}");
    let (a, b) = (f.grid[max[0]], f.grid[max[1]]);
    assert!((a + b).abs() < 0.02);
    assert!((f.periodic_integral() - 1.0).abs() < 1e-6);
}

#[test]
fn density_mean_cos_reproduces_localization() {
    for (tau, sigma) in [(0.7, 0.3), (1.84, 0.05), (4.0, 1.0)] {
        let f = spatial_density(tau, sigma, &uniform_grid(2048)).unwrap();
        assert!((1.0 - f.mean_cos() - localization_factor_closed(tau, sigma)).abs() < 1e-7);
    }
}

proptest! {
    #[test]
    fn kick_and_drift_keep_positions_in_cell(
        x in -10.0f64..10.0, v in -5.0f64..5.0, p in 0.0f64..5.0, t in 0.0f64..50.0
    ) {
        let mut e = ClassicalEnsemble::from_phase_space(vec![x], vec![v]).unwrap();
        e.kick(p);
        e.drift(t).unwrap();
        let x = e.positions()[0];
        prop_assert!((-PI..PI).contains(&x));
    }

    #[test]
    fn kick_drift_map_has_unit_jacobian(
        x in -3.0f64..3.0, v in -2.0f64..2.0, p in 0.0f64..3.0, t in 0.0f64..2.0
    ) {
        // (x, v) -> (x + (v - p sin x) t, v - p sin x), unwrapped
        let map = |x: f64, v: f64| {
            let v2 = v - p * x.sin();
            (x + v2 * t, v2)
        };
        let h = 1e-6;
        let (a1, b1) = map(x + h, v);
        let (a0, b0) = map(x - h, v);
        let (c1, d1) = map(x, v + h);
        let (c0, d0) = map(x, v - h);
        let det = ((a1 - a0) * (d1 - d0) - (b1 - b0) * (c1 - c0)) / (4.0 * h * h);
        prop_assert!((det - 1.0).abs() < 1e-6);
    }

    #[test]
    fn closed_form_stays_in_range(tau in 0.0f64..100.0, sigma in 0.0f64..3.0) {
        let l = localization_factor_closed(tau, sigma);
        prop_assert!((0.0..=2.0).contains(&l));
    }
}
