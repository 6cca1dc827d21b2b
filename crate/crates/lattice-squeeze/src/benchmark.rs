//! Classical zero-temperature schedule benchmark: accumulative and optimal
//! schedules for up to five unit kicks against the reference values.

use std::fmt::Write;

use lattice_squeeze_core::strategies::benchmarks::{compare_classical, BenchmarkRow};
use lattice_squeeze_core::strategies::{accumulative_schedule, FixedNOptions, ModelSpec, ScheduleResult};
use rayon::prelude::*;
use serde::Serialize;

use crate::parallel;
use crate::Result;

#[derive(Debug, Clone, Serialize)]
pub struct BenchmarkReport {
    pub accumulative: ScheduleResult,
    /// Optimal schedules for 2 to 5 kicks.
    pub optimal: Vec<ScheduleResult>,
    pub rows: Vec<BenchmarkRow>,
    pub pass: bool,
}

pub fn run_tables(options: &FixedNOptions) -> Result<BenchmarkReport> {
    let spec = ModelSpec::classical(0.0);
    let accumulative = accumulative_schedule(&spec, 1.0, 5, &Default::default())?;
    let optimal = (2..=5)
        .into_par_iter()
        .map(|n| parallel::optimize_fixed_n(&spec, 1.0, n, options))
        .collect::<Result<Vec<_>>>()?;
    let rows = compare_classical(&accumulative, &optimal);
    let pass = rows.iter().all(|r| r.pass);
    Ok(BenchmarkReport {
        accumulative,
        optimal,
        rows,
        pass,
    })
}

fn delays_cell(d: &[f64]) -> String {
    d.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>().join(" & ")
}

/// Markdown rendering: minima table, delay table, then one verdict per
/// compared quantity.
pub fn markdown(report: &BenchmarkReport) -> String {
    let mut s = String::new();
    let acc = &report.accumulative.diagnostics.per_kick_minima;
    let _ = writeln!(s, "## Minimal localization factor\n");
    let _ = writeln!(s, "| kicks | accumulative | optimal |");
    let _ = writeln!(s, "|---|---|---|");
    for (k, l) in acc.iter().enumerate() {
        let opt = if k == 0 {
            "-".to_owned()
        } else {
            report.optimal.get(k - 1).map_or("-".to_owned(), |r| format!("{:.4}", r.l_min))
        };
        let _ = writeln!(s, "| {} | {l:.4} | {opt} |", k + 1);
    }
    let _ = writeln!(s, "\n## Delay times\n");
    let _ = writeln!(s, "| schedule | delays |");
    let _ = writeln!(s, "|---|---|");
    let acc_delays = report.accumulative.delays_with_final();
    let _ = writeln!(s, "| accumulative | {} |", delays_cell(&acc_delays[..acc_delays.len().min(4)]));
    for r in &report.optimal {
        let _ = writeln!(s, "| {} kicks | {} |", r.sequence.len(), delays_cell(&r.sequence.delays()));
    }
    let _ = writeln!(s, "\n## Checks\n");
    let _ = writeln!(s, "| quantity | expected | found | tolerance | verdict |");
    let _ = writeln!(s, "|---|---|---|---|---|");
    for r in &report.rows {
        let tol = if r.tolerance == 0.0 { "exact".to_owned() } else { format!("±{}", r.tolerance) };
        let found = if r.tolerance == 0.0 { format!("{}", r.found) } else { format!("{:.4}", r.found) };
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "| {} | {} | {found} | {tol} | {verdict} |", r.label, r.expected);
    }
    let _ = writeln!(s, "\nOverall: {}", if report.pass { "PASS" } else { "FAIL" });
    s
}
