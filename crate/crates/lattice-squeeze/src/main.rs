use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use lattice_squeeze::cli::Cli;
use lattice_squeeze::{commands, io, parallel, CliError};

fn run() -> Result<bool, CliError> {
    let cli = Cli::parse();
    let config = cli.to_config()?;
    let outcome = parallel::with_threads(config.threads, || commands::execute(&config))??;
    io::write_artifacts(&outcome.artifacts)?;
    let mut stdout = std::io::stdout().lock();
    stdout
        .write_all(&outcome.stdout)
        .and_then(|()| stdout.flush())
        .map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })?;
    Ok(outcome.pass)
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, CliError::Config(_)) { 2 } else { 1 })
        }
    }
}
