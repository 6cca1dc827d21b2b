//! Command-line arguments and their merge into a [`RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use lattice_squeeze_core::Engine;

use crate::config::{CommandKind, Format, Method, PulseSource, RunConfig};
use crate::{config_error, io, Result};

#[derive(Debug, Parser)]
#[command(name = "lattice-squeeze", version, about = "Squeezing cold atoms with a pulsed optical lattice")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Localization factor L(τ) for a pulse sequence.
    Trace(RunArgs),
    /// Spatial density profiles at the requested times.
    Density(RunArgs),
    /// Phase-space (x, v) snapshots of a Monte Carlo ensemble.
    PhaseSpace(RunArgs),
    /// Greedy accumulative pulse schedule.
    Accumulate(RunArgs),
    /// Optimal fixed-N schedule, or the quantum two-kick scan over --p-grid.
    Optimize(RunArgs),
    /// Classical schedules against the reference tables; exits 1 on FAIL.
    Benchmark(RunArgs),
}

impl Command {
    fn parts(&self) -> (CommandKind, &RunArgs) {
        match self {
            Command::Trace(a) => (CommandKind::Trace, a),
            Command::Density(a) => (CommandKind::Density, a),
            Command::PhaseSpace(a) => (CommandKind::PhaseSpace, a),
            Command::Accumulate(a) => (CommandKind::Accumulate, a),
            Command::Optimize(a) => (CommandKind::Optimize, a),
            Command::Benchmark(a) => (CommandKind::Benchmark, a),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum EngineArg {
    Classical,
    Quantum,
}

/// Flags shared by every subcommand. Each one overrides the value from
/// `--config`.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// JSON config file; output sidecars are accepted as well.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub engine: Option<EngineArg>,
    /// Thermal width (classical or quantum units, per engine).
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<f64>,
    /// Kick strength.
    #[arg(long = "P", value_name = "P", allow_hyphen_values = true)]
    pub strength: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Monte Carlo particles (or quadrature positions).
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Worker threads (default: all cores).
    #[arg(long, env = "LATTICE_SQUEEZE_THREADS")]
    pub threads: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub tmax: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub dt: Option<f64>,
    /// Explicit sample times, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub times: Option<Vec<f64>>,
    /// Density grid size.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Pulse sequence file `{"kicks": [{"tau": .., "P": ..}]}`.
    #[arg(long, value_name = "FILE")]
    pub pulses: Option<PathBuf>,
    /// A single kick of strength P at τ = 0.
    #[arg(long, value_name = "P", allow_hyphen_values = true)]
    pub kick: Option<f64>,
    /// Use the accumulative schedule of K kicks.
    #[arg(long, value_name = "K")]
    pub accumulate: Option<usize>,
    /// Use the optimal schedule of N kicks.
    #[arg(long, value_name = "N")]
    pub optimize: Option<usize>,
    /// Kick count for `accumulate` and `optimize`.
    #[arg(long, value_name = "K")]
    pub kicks: Option<usize>,
    /// Objective evaluations for fixed-N searches.
    #[arg(long)]
    pub budget: Option<usize>,
    /// Latin-hypercube starts for fixed-N searches.
    #[arg(long)]
    pub starts: Option<usize>,
    /// Lengthen accumulative delays by one revival period (quantum).
    #[arg(long)]
    pub trev_shift: bool,
    /// Let kick strengths vary in fixed-N searches.
    #[arg(long)]
    pub vary_strengths: bool,
    /// Kick strengths for the quantum two-kick scan, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub p_grid: Option<Vec<f64>>,
    /// Search window for the quantum two-kick scan.
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<f64>,
}

impl Cli {
    /// Effective configuration: defaults, then `--config`, then flags.
    pub fn to_config(&self) -> Result<RunConfig> {
        let (kind, args) = self.command.parts();
        args.to_config(kind)
    }
}

impl RunArgs {
    pub fn to_config(&self, kind: CommandKind) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        c.command = kind;
        if let Some(e) = self.engine {
            c.engine = match e {
                EngineArg::Classical => Engine::Classical,
                EngineArg::Quantum => Engine::Quantum,
            };
        }
        macro_rules! take {
            ($($field:ident),*) => {$(
                if let Some(v) = &self.$field {
                    c.$field = v.clone();
                }
            )*};
        }
        take!(sigma, strength, seed, samples, method, format, tmax, dt, times, grid, budget, starts, p_grid, window);
        if self.out.is_some() {
            c.out = self.out.clone();
        }
        if self.threads.is_some() {
            c.threads = self.threads;
        }
        c.trev_shift |= self.trev_shift;
        c.vary_strengths |= self.vary_strengths;

        let sources = [
            self.pulses.is_some(),
            self.kick.is_some(),
            self.accumulate.is_some(),
            self.optimize.is_some(),
            self.kicks.is_some(),
        ];
        if sources.iter().filter(|s| **s).count() > 1 {
            return Err(config_error(
                "give at most one of --pulses, --kick, --accumulate, --optimize, --kicks",
            ));
        }
        if let Some(path) = &self.pulses {
            c.source = PulseSource::Sequence {
                sequence: io::read_pulses(path)?,
            };
        }
        if let Some(p) = self.kick {
            if self.strength.is_some_and(|s| s != p) {
                return Err(config_error("--kick and --P disagree"));
            }
            c.strength = p;
            c.source = PulseSource::Single;
        }
        if let Some(k) = self.accumulate {
            c.source = PulseSource::Accumulate { kicks: k };
        }
        if let Some(n) = self.optimize {
            c.source = PulseSource::Optimize { kicks: n };
        }
        if let Some(k) = self.kicks {
            c.source = match kind {
                CommandKind::Optimize => PulseSource::Optimize { kicks: k },
                CommandKind::Accumulate => PulseSource::Accumulate { kicks: k },
                _ => return Err(config_error("--kicks is for `accumulate` and `optimize`")),
            };
        }
        c.validate()?;
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn flags_override_defaults() {
        let cli = Cli::try_parse_from([
            "lattice-squeeze", "trace", "--engine", "quantum", "--P", "0.5", "--sigma", "0.2", "--tmax", "12.6",
        ])
        .unwrap();
        let c = cli.to_config().unwrap();
        assert_eq!(c.engine, Engine::Quantum);
        assert_eq!(c.strength, 0.5);
        assert_eq!(c.sample_times().len(), 1261);
        assert_eq!(c.source, PulseSource::Single);
    }

    #[test]
    fn kick_sets_a_single_pulse() {
        let cli = Cli::try_parse_from(["lattice-squeeze", "trace", "--kick", "2"]).unwrap();
        let c = cli.to_config().unwrap();
        assert_eq!(c.strength, 2.0);
        let both = Cli::try_parse_from(["lattice-squeeze", "trace", "--kick", "2", "--accumulate", "3"]).unwrap();
        assert!(both.to_config().is_err());
    }

    #[test]
    fn kicks_maps_to_the_subcommand_source() {
        let cli = Cli::try_parse_from(["lattice-squeeze", "accumulate", "--kicks", "4"]).unwrap();
        assert_eq!(cli.to_config().unwrap().source, PulseSource::Accumulate { kicks: 4 });
        let cli = Cli::try_parse_from(["lattice-squeeze", "optimize", "--kicks", "3"]).unwrap();
        assert_eq!(cli.to_config().unwrap().source, PulseSource::Optimize { kicks: 3 });
    }

    #[test]
    fn times_are_comma_separated() {
        let cli = Cli::try_parse_from(["lattice-squeeze", "density", "--times", "1,1.84", "--out", "d.csv"]).unwrap();
        assert_eq!(cli.to_config().unwrap().times, vec![1.0, 1.84]);
    }
}
