//! Command implementations. Each command computes all of its outputs in
//! memory; files are written only after everything succeeded.

use std::f64::consts::{PI, TAU};

use lattice_squeeze_core::classical::{
    phase_space_snapshots, propagate_trace, run_classical, spatial_density, ClassicalEnsemble,
};
use lattice_squeeze_core::profile::uniform_grid;
use lattice_squeeze_core::quantum::{run_quantum, spatial_density_quantum, QuantumOptions};
use lattice_squeeze_core::strategies::{
    accumulative_schedule, AccumulativeOptions, FixedNOptions, ModelSpec, ScheduleResult, TwoKickOptions,
};
use lattice_squeeze_core::{DensityProfile, Engine, LocalizationTrace, PulseSequence};
use serde::Serialize;

use crate::config::{CommandKind, Format, Method, PulseSource, RunConfig};
use crate::io::{self, Artifact};
use crate::{benchmark, parallel, Result};

/// Velocity nodes of deterministic classical ensembles.
const QUADRATURE_VELOCITIES: usize = 32;

/// What a command produced.
#[derive(Debug, Default)]
pub struct Outcome {
    pub artifacts: Vec<Artifact>,
    pub stdout: Vec<u8>,
    /// False when a benchmark has FAIL rows.
    pub pass: bool,
}

pub fn execute(config: &RunConfig) -> Result<Outcome> {
    config.validate()?;
    match config.command {
        CommandKind::Trace => trace(config),
        CommandKind::Density => density(config),
        CommandKind::PhaseSpace => phase_space(config),
        CommandKind::Accumulate | CommandKind::Optimize => schedule(config),
        CommandKind::Benchmark => benchmark_tables(config),
    }
}

pub fn model_spec(config: &RunConfig) -> ModelSpec {
    match config.engine {
        Engine::Classical => ModelSpec::classical(config.sigma),
        Engine::Quantum => ModelSpec::quantum(config.sigma),
    }
}

fn fixed_n_options(config: &RunConfig) -> FixedNOptions {
    FixedNOptions {
        starts: config.starts,
        budget: config.budget,
        seed: config.seed,
        vary_strengths: config.vary_strengths,
        ..Default::default()
    }
}

fn accumulative_options(config: &RunConfig) -> AccumulativeOptions {
    AccumulativeOptions {
        revival_shift: config.trev_shift,
        ..Default::default()
    }
}

/// The pulse sequence of a run, and the schedule it came from if any.
pub fn resolve_sequence(config: &RunConfig) -> Result<(PulseSequence, Option<ScheduleResult>)> {
    let spec = model_spec(config);
    Ok(match &config.source {
        PulseSource::Single => (PulseSequence::single(config.strength)?, None),
        PulseSource::Sequence { sequence } => (sequence.clone(), None),
        PulseSource::Accumulate { kicks } => {
            let r = accumulative_schedule(&spec, config.strength, *kicks, &accumulative_options(config))?;
            (r.sequence.clone(), Some(r))
        }
        PulseSource::Optimize { kicks } => {
            let r = parallel::optimize_fixed_n(&spec, config.strength, *kicks, &fixed_n_options(config))?;
            (r.sequence.clone(), Some(r))
        }
    })
}

/// Routes a single output to `--out` (with a sidecar for CSV) or stdout.
fn emit(config: &RunConfig, bytes: Vec<u8>, pass: bool) -> Result<Outcome> {
    Ok(match &config.out {
        Some(path) => {
            let mut artifacts = vec![Artifact {
                path: path.clone(),
                bytes,
            }];
            if config.format == Format::Csv {
                artifacts.push(Artifact {
                    path: io::sidecar_path(path),
                    bytes: io::sidecar_json(config)?,
                });
            }
            Outcome {
                artifacts,
                stdout: Vec::new(),
                pass,
            }
        }
        None => Outcome {
            artifacts: Vec::new(),
            stdout: bytes,
            pass,
        },
    })
}

/// Routes one CSV per time to indexed files (or the single file / stdout).
fn emit_many(config: &RunConfig, parts: Vec<Vec<u8>>) -> Result<Outcome> {
    if parts.len() == 1 {
        return emit(config, parts.into_iter().next().unwrap_or_default(), true);
    }
    let out = config.out.as_ref().expect("validated: several outputs need --out");
    let mut artifacts: Vec<Artifact> = parts
        .into_iter()
        .enumerate()
        .map(|(i, bytes)| Artifact {
            path: io::indexed_path(out, i),
            bytes,
        })
        .collect();
    artifacts.push(Artifact {
        path: io::sidecar_path(out),
        bytes: io::sidecar_json(config)?,
    });
    Ok(Outcome {
        artifacts,
        stdout: Vec::new(),
        pass: true,
    })
}

pub fn compute_trace(config: &RunConfig, sequence: &PulseSequence) -> Result<LocalizationTrace> {
    let times = config.sample_times();
    Ok(match (config.engine, config.method) {
        (Engine::Classical, Method::Mc) => run_classical(sequence, config.sigma, config.samples, &times, config.seed)?,
        (Engine::Classical, Method::Quadrature) => {
            let e = ClassicalEnsemble::quadrature(config.sigma, config.samples, QUADRATURE_VELOCITIES)?;
            propagate_trace(e, sequence, &times)?
        }
        (Engine::Quantum, _) => run_quantum(sequence, config.sigma, &times, &QuantumOptions::default())?,
    })
}

fn trace(config: &RunConfig) -> Result<Outcome> {
    let (sequence, _) = resolve_sequence(config)?;
    let t = compute_trace(config, &sequence)?;
    let bytes = match config.format {
        Format::Csv => io::trace_csv(&t)?,
        Format::Json => io::document_json(config, &t)?,
    };
    emit(config, bytes, true)
}

/// Density of the classical ensemble at `tau`: exact for at most one kick at
/// `τ = 0`, otherwise a Monte Carlo histogram centred on the grid points.
pub fn classical_density(
    config: &RunConfig,
    sequence: &PulseSequence,
    taus: &[f64],
    grid: &[f64],
) -> Result<Vec<DensityProfile>> {
    let merged = sequence.merged();
    let kicks = merged.kicks();
    if kicks.is_empty() {
        return Ok(taus
            .iter()
            .map(|_| DensityProfile {
                grid: grid.to_vec(),
                density: vec![1.0 / TAU; grid.len()],
            })
            .collect());
    }
    if kicks.len() == 1 && kicks[0].tau == 0.0 && kicks[0].strength > 0.0 {
        let p = kicks[0].strength;
        return taus
            .iter()
            .map(|&t| Ok(spatial_density(p * t, config.sigma / p, grid)?))
            .collect();
    }
    let ensemble = ClassicalEnsemble::sample_thermal(config.samples, config.sigma, config.seed)?;
    let snapshots = phase_space_snapshots(ensemble, sequence, taus)?;
    let n = grid.len();
    let h = TAU / n as f64;
    Ok(snapshots
        .iter()
        .map(|e| {
            let mut counts = vec![0usize; n];
            for &x in e.positions() {
                let b = ((x + PI) / h + 0.5).floor() as usize % n;
                counts[b] += 1;
            }
            let norm = 1.0 / (e.len() as f64 * h);
            DensityProfile {
                grid: grid.to_vec(),
                density: counts.iter().map(|&c| c as f64 * norm).collect(),
            }
        })
        .collect())
}

#[derive(Serialize)]
struct TimedProfile<'a> {
    tau: f64,
    profile: &'a DensityProfile,
}

fn density(config: &RunConfig) -> Result<Outcome> {
    let (sequence, _) = resolve_sequence(config)?;
    let grid = uniform_grid(config.grid);
    let profiles = match config.engine {
        Engine::Classical => classical_density(config, &sequence, &config.times, &grid)?,
        Engine::Quantum => config
            .times
            .iter()
            .map(|&t| Ok(spatial_density_quantum(&sequence, config.sigma, t, &grid, &QuantumOptions::default())?))
            .collect::<Result<Vec<_>>>()?,
    };
    match config.format {
        Format::Csv => emit_many(config, profiles.iter().map(io::density_csv).collect::<Result<_>>()?),
        Format::Json => {
            let timed: Vec<_> = config
                .times
                .iter()
                .zip(&profiles)
                .map(|(&tau, profile)| TimedProfile { tau, profile })
                .collect();
            emit(config, io::document_json(config, &timed)?, true)
        }
    }
}

#[derive(Serialize)]
struct Snapshot<'a> {
    tau: f64,
    x: &'a [f64],
    v: &'a [f64],
}

fn phase_space(config: &RunConfig) -> Result<Outcome> {
    let (sequence, _) = resolve_sequence(config)?;
    let ensemble = ClassicalEnsemble::sample_thermal(config.samples, config.sigma, config.seed)?;
    let snaps = phase_space_snapshots(ensemble, &sequence, &config.times)?;
    match config.format {
        Format::Csv => emit_many(config, snaps.iter().map(io::phase_space_csv).collect::<Result<_>>()?),
        Format::Json => {
            let s: Vec<_> = config
                .times
                .iter()
                .zip(&snaps)
                .map(|(&tau, e)| Snapshot {
                    tau,
                    x: e.positions(),
                    v: e.velocities(),
                })
                .collect();
            emit(config, io::document_json(config, &s)?, true)
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CurvePoint {
    #[serde(rename = "P")]
    pub strength: f64,
    pub result: ScheduleResult,
}

fn schedule_csv(r: &ScheduleResult) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["kick", "tau", "P", "L_min"])?;
    let minima = &r.diagnostics.per_kick_minima;
    for (i, k) in r.sequence.kicks().iter().enumerate() {
        let l = minima.get(i).copied().unwrap_or(f64::NAN);
        w.write_record([(i + 1).to_string(), io::format_f64(k.tau), io::format_f64(k.strength), io::format_f64(l)])?;
    }
    w.write_record(["final".to_owned(), io::format_f64(r.t_min), String::new(), io::format_f64(r.l_min)])?;
    w.into_inner().map_err(|e| crate::CliError::Csv(e.into_error().into()))
}

fn curve_csv(points: &[CurvePoint]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["P", "L_min", "delay", "final"])?;
    for p in points {
        let d = p.result.delays_with_final();
        w.write_record([p.strength, p.result.l_min, d[0], d[1]].map(io::format_f64))?;
    }
    w.into_inner().map_err(|e| crate::CliError::Csv(e.into_error().into()))
}

fn schedule(config: &RunConfig) -> Result<Outcome> {
    if config.command == CommandKind::Optimize && !config.p_grid.is_empty() {
        let opts = TwoKickOptions {
            window: config.window,
            ..Default::default()
        };
        let points: Vec<CurvePoint> = parallel::two_kick_curve(config.sigma, &config.p_grid, &opts)?
            .into_iter()
            .map(|(strength, result)| CurvePoint { strength, result })
            .collect();
        let bytes = match config.format {
            Format::Csv => curve_csv(&points)?,
            Format::Json => io::document_json(config, &points)?,
        };
        return emit(config, bytes, true);
    }
    let (_, result) = resolve_sequence(config)?;
    let result = result.expect("validated: schedule commands have a schedule source");
    let bytes = match config.format {
        Format::Csv => schedule_csv(&result)?,
        Format::Json => io::document_json(config, &result)?,
    };
    emit(config, bytes, true)
}

fn benchmark_tables(config: &RunConfig) -> Result<Outcome> {
    let report = benchmark::run_tables(&fixed_n_options(config))?;
    let md = benchmark::markdown(&report);
    let json = io::document_json(config, &report)?;
    Ok(match &config.out {
        Some(out) => Outcome {
            artifacts: vec![
                Artifact {
                    path: out.with_extension("md"),
                    bytes: md.into_bytes(),
                },
                Artifact {
                    path: out.with_extension("json"),
                    bytes: json,
                },
            ],
            stdout: Vec::new(),
            pass: report.pass,
        },
        None => Outcome {
            artifacts: Vec::new(),
            stdout: match config.format {
                Format::Json => json,
                Format::Csv => md.into_bytes(),
            },
            pass: report.pass,
        },
    })
}
