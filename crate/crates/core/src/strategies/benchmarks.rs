//! Reference values for classical zero-temperature schedules with unit
//! kicks, and comparison of computed schedules against them.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::result::ScheduleResult;

/// Accumulative minima after 1 to 5 kicks.
pub const ACCUMULATIVE_MINIMA: [f64; 5] = [0.42, 0.33, 0.26, 0.21, 0.18];
/// First four accumulative delays.
pub const ACCUMULATIVE_DELAYS: [f64; 4] = [1.84, 0.59, 0.42, 0.29];
/// Optimal minima for 2 to 5 kicks.
pub const OPTIMAL_MINIMA: [f64; 4] = [0.31, 0.20, 0.11, 0.07];
/// Optimal delays for 2 to 5 kicks.
pub const OPTIMAL_DELAYS: [&[f64]; 4] = [&[1.41], &[2.73, 0.0], &[3.02, 1.35, 0.0], &[3.09, 1.47, 0.12, 0.03]];

pub const MINIMUM_TOLERANCE: f64 = 0.01;
pub const DELAY_TOLERANCE: f64 = 0.03;

/// One compared quantity.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BenchmarkRow {
    pub label: String,
    pub expected: f64,
    pub found: f64,
    /// Allowed deviation; zero means the value must be hit exactly.
    pub tolerance: f64,
    pub pass: bool,
}

impl BenchmarkRow {
    pub fn new(label: String, expected: f64, found: f64, tolerance: f64) -> Self {
        let pass = if tolerance == 0.0 {
            found == expected
        } else {
            (found - expected).abs() <= tolerance
        };
        Self {
            label,
            expected,
            found,
            tolerance,
            pass,
        }
    }
}

/// Compares a 5-kick accumulative schedule and the optimal schedules for
/// 2..=5 kicks (in that order) with the reference values. Zero reference
/// delays must be matched exactly.
pub fn compare_classical(accumulative: &ScheduleResult, optimal: &[ScheduleResult]) -> Vec<BenchmarkRow> {
    let mut rows = Vec::new();
    let minima = &accumulative.diagnostics.per_kick_minima;
    for (k, &want) in ACCUMULATIVE_MINIMA.iter().enumerate() {
        let found = minima.get(k).copied().unwrap_or(f64::NAN);
        rows.push(BenchmarkRow::new(
            format!("accumulative L, {} kicks", k + 1),
            want,
            found,
            MINIMUM_TOLERANCE,
        ));
    }
    let delays = accumulative.delays_with_final();
    for (k, &want) in ACCUMULATIVE_DELAYS.iter().enumerate() {
        let found = delays.get(k).copied().unwrap_or(f64::NAN);
        rows.push(BenchmarkRow::new(
            format!("accumulative delay {}", k + 1),
            want,
            found,
            DELAY_TOLERANCE,
        ));
    }
    for (i, (&want_l, want_d)) in OPTIMAL_MINIMA.iter().zip(OPTIMAL_DELAYS).enumerate() {
        let n = i + 2;
        let (found_l, found_d) = match optimal.get(i) {
            Some(r) => (r.l_min, r.sequence.delays()),
            None => (f64::NAN, Vec::new()),
        };
        rows.push(BenchmarkRow::new(format!("optimal L, {n} kicks"), want_l, found_l, MINIMUM_TOLERANCE));
        for (j, &want) in want_d.iter().enumerate() {
            let found = found_d.get(j).copied().unwrap_or(f64::NAN);
            let tol = if want == 0.0 { 0.0 } else { DELAY_TOLERANCE };
            rows.push(BenchmarkRow::new(format!("optimal delay {}, {n} kicks", j + 1), want, found, tol));
        }
    }
    rows
}
