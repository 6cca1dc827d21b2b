//! Run configuration: defaults, JSON config files and validation.

use std::path::{Path, PathBuf};

use lattice_squeeze_core::{Engine, PulseSequence};
use serde::{Deserialize, Serialize};

use crate::{config_error, CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    #[default]
    Trace,
    Density,
    PhaseSpace,
    Accumulate,
    Optimize,
    Benchmark,
}

impl CommandKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CommandKind::Trace => "trace",
            CommandKind::Density => "density",
            CommandKind::PhaseSpace => "phase-space",
            CommandKind::Accumulate => "accumulate",
            CommandKind::Optimize => "optimize",
            CommandKind::Benchmark => "benchmark",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// How classical ensembles are built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Seeded Monte Carlo sample of `samples` particles.
    #[default]
    Mc,
    /// Deterministic grid of `samples` positions times Gauss-Hermite
    /// velocities.
    Quadrature,
}

/// Where the pulse sequence comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum PulseSource {
    /// One kick of strength `P` at `τ = 0`.
    #[default]
    Single,
    /// An explicit sequence (read from a pulse file).
    Sequence { sequence: PulseSequence },
    /// Greedy schedule of `kicks` kicks of strength `P`.
    Accumulate { kicks: usize },
    /// Optimal schedule of `kicks` kicks of strength `P`.
    Optimize { kicks: usize },
}

/// Everything a run depends on. Echoed into every output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: CommandKind,
    pub engine: Engine,
    pub sigma: f64,
    #[serde(rename = "P")]
    pub strength: f64,
    pub source: PulseSource,
    pub seed: u64,
    pub samples: usize,
    pub method: Method,
    /// Explicit sample times; when empty, `0..=tmax` in steps of `dt`.
    pub times: Vec<f64>,
    pub tmax: f64,
    pub dt: f64,
    /// Density grid size.
    pub grid: usize,
    /// Total objective evaluations for fixed-N searches.
    pub budget: usize,
    pub starts: usize,
    pub trev_shift: bool,
    pub vary_strengths: bool,
    /// Kick strengths for the quantum two-kick scan.
    pub p_grid: Vec<f64>,
    /// Search window of the quantum two-kick scan.
    pub window: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let fixed = lattice_squeeze_core::strategies::FixedNOptions::default();
        Self {
            command: CommandKind::Trace,
            engine: Engine::Classical,
            sigma: 0.0,
            strength: 1.0,
            source: PulseSource::Single,
            seed: 0,
            samples: 100_000,
            method: Method::Mc,
            times: Vec::new(),
            tmax: 6.0,
            dt: 0.01,
            grid: 512,
            budget: fixed.budget,
            starts: fixed.starts,
            trev_shift: false,
            vary_strengths: false,
            p_grid: Vec::new(),
            window: std::f64::consts::PI,
            format: Format::Csv,
            out: None,
            threads: None,
        }
    }
}

impl RunConfig {
    /// Reads a config file. Accepts either a bare config or any output
    /// document carrying a `config` member (sidecars, JSON results).
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })?;
        let value: serde_json::Value = serde_json::from_str(&text).map_err(|source| CliError::Json {
            path: path.to_owned(),
            source,
        })?;
        let inner = match value {
            serde_json::Value::Object(mut map) if map.contains_key("config") => map.remove("config").unwrap_or_default(),
            other => other,
        };
        serde_json::from_value(inner).map_err(|source| CliError::Json {
            path: path.to_owned(),
            source,
        })
    }

    /// Sample times for traces.
    pub fn sample_times(&self) -> Vec<f64> {
        if !self.times.is_empty() {
            return self.times.clone();
        }
        let n = (self.tmax / self.dt).round() as usize + 1;
        if n == 1 {
            return vec![0.0];
        }
        lattice_squeeze_core::trace::uniform_times(self.tmax, n)
    }

    /// Checks the whole config before any computation starts.
    pub fn validate(&self) -> Result<()> {
        let finite_nonneg = |name: &str, v: f64| {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(config_error(format!("{name} must be finite and non-negative, got {v}")))
            }
        };
        finite_nonneg("sigma", self.sigma)?;
        finite_nonneg("P", self.strength)?;
        finite_nonneg("tmax", self.tmax)?;
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(config_error(format!("dt must be positive, got {}", self.dt)));
        }
        if self.samples == 0 {
            return Err(config_error("samples must be at least 1"));
        }
        if self.grid < 2 {
            return Err(config_error("grid needs at least 2 points"));
        }
        for w in self.times.windows(2) {
            if w[1] <= w[0] {
                return Err(config_error("times must be strictly increasing"));
            }
        }
        if let Some(t) = self.times.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
            return Err(config_error(format!("times must be finite and non-negative, got {t}")));
        }
        if self.sample_times().len() > 10_000_000 {
            return Err(config_error("too many sample times"));
        }
        if self.threads == Some(0) {
            return Err(config_error("threads must be at least 1"));
        }
        if let Some(p) = self.p_grid.iter().find(|p| !(p.is_finite() && **p > 0.0)) {
            return Err(config_error(format!("p-grid entries must be positive, got {p}")));
        }
        if !(self.window > 0.0 && self.window.is_finite()) {
            return Err(config_error("window must be positive"));
        }
        if self.trev_shift && self.engine != Engine::Quantum {
            return Err(config_error("--trev-shift applies to the quantum engine only"));
        }
        match (self.command, &self.source) {
            (CommandKind::Accumulate, PulseSource::Accumulate { kicks })
            | (CommandKind::Optimize, PulseSource::Optimize { kicks }) => {
                if *kicks == 0 {
                    return Err(config_error("kick count must be at least 1"));
                }
            }
            (CommandKind::Optimize, PulseSource::Single) if !self.p_grid.is_empty() => {}
            (CommandKind::Accumulate, _) => {
                return Err(config_error("accumulate needs --kicks K (or --accumulate K)"))
            }
            (CommandKind::Optimize, _) => {
                return Err(config_error("optimize needs --kicks N (or --optimize N) or --p-grid"))
            }
            (_, PulseSource::Accumulate { kicks: 0 } | PulseSource::Optimize { kicks: 0 }) => {
                return Err(config_error("kick count must be at least 1"))
            }
            _ => {}
        }
        if !self.p_grid.is_empty() && (self.command != CommandKind::Optimize || self.engine != Engine::Quantum) {
            return Err(config_error("--p-grid is only used by `optimize --engine quantum`"));
        }
        if matches!(self.source, PulseSource::Optimize { .. }) && self.budget == 0 {
            return Err(config_error("budget must be positive"));
        }
        match self.command {
            CommandKind::Density if self.times.is_empty() => {
                return Err(config_error("density needs --times"));
            }
            CommandKind::Density | CommandKind::PhaseSpace if self.times.len() > 1 && self.out.is_none() => {
                return Err(config_error("several times need --out to name one file per time"));
            }
            CommandKind::PhaseSpace if self.engine != Engine::Classical => {
                return Err(config_error("phase-space snapshots exist for the classical engine only"));
            }
            CommandKind::PhaseSpace if self.times.is_empty() => {
                return Err(config_error("phase-space needs --times"));
            }
            _ => {}
        }
        if let Some(out) = &self.out {
            let parent = out.parent().filter(|p| !p.as_os_str().is_empty());
            if let Some(dir) = parent {
                if !dir.is_dir() {
                    return Err(config_error(format!("output directory {} does not exist", dir.display())));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_trace_times() {
        let c = RunConfig::default();
        let t = c.sample_times();
        assert_eq!(t.len(), 601);
        assert_eq!(t[600], 6.0);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn round_trips_through_json() {
        let c = RunConfig {
            source: PulseSource::Sequence {
                sequence: PulseSequence::from_delays(0.5, &[1.0, 2.0]).unwrap(),
            },
            p_grid: vec![1.0, 2.0],
            ..Default::default()
        };
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), c);
    }

    #[test]
    fn rejects_inconsistent_configs() {
        let bad = [
            RunConfig {
                sigma: -1.0,
                ..Default::default()
            },
            RunConfig {
                command: CommandKind::Accumulate,
                ..Default::default()
            },
            RunConfig {
                command: CommandKind::Density,
                ..Default::default()
            },
            RunConfig {
                command: CommandKind::PhaseSpace,
                engine: Engine::Quantum,
                times: vec![1.0],
                ..Default::default()
            },
            RunConfig {
                times: vec![1.0, 0.5],
                ..Default::default()
            },
            RunConfig {
                trev_shift: true,
                ..Default::default()
            },
            RunConfig {
                out: Some(PathBuf::from("/no/such/dir/x.csv")),
                ..Default::default()
            },
        ];
        for c in bad {
            assert!(c.validate().is_err(), "{c:?}");
        }
    }
}
