//! CSV and JSON file formats.
//!
//! CSV files are RFC 4180 with a header row; numbers are written with 17
//! significant digits so that they parse back to the same `f64`.

use std::fs;
use std::path::{Path, PathBuf};

use lattice_squeeze_core::classical::ClassicalEnsemble;
use lattice_squeeze_core::{DensityProfile, LocalizationTrace, PulseSequence};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::{CliError, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Scientific notation with 17 significant digits; parses back exactly.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn columns<const N: usize>(headers: [&str; N], rows: impl Iterator<Item = [f64; N]>) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(headers)?;
    for row in rows {
        w.write_record(row.iter().map(|v| format_f64(*v)))?;
    }
    w.into_inner().map_err(|e| CliError::Csv(e.into_error().into()))
}

/// `tau,L`
pub fn trace_csv(trace: &LocalizationTrace) -> Result<Vec<u8>> {
    columns(["tau", "L"], trace.samples().iter().map(|s| [s.tau, s.localization]))
}

/// `x,f`
pub fn density_csv(profile: &DensityProfile) -> Result<Vec<u8>> {
    columns(["x", "f"], profile.grid.iter().zip(&profile.density).map(|(x, f)| [*x, *f]))
}

/// `x,v`
pub fn phase_space_csv(ensemble: &ClassicalEnsemble) -> Result<Vec<u8>> {
    columns(
        ["x", "v"],
        ensemble.positions().iter().zip(ensemble.velocities()).map(|(x, v)| [*x, *v]),
    )
}

/// Reads a `tau,L` CSV back.
pub fn read_trace_csv(bytes: &[u8]) -> Result<Vec<(f64, f64)>> {
    let mut r = csv::Reader::from_reader(bytes);
    let mut out = Vec::new();
    for rec in r.deserialize() {
        let (tau, l): (f64, f64) = rec?;
        out.push((tau, l));
    }
    Ok(out)
}

/// Reads a pulse file `{"kicks": [{"tau": .., "P": ..}, ..]}`.
pub fn read_pulses(path: &Path) -> Result<PulseSequence> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_owned(),
        source,
    })
}

/// Provenance attached to every output: as a sidecar next to CSV files, or
/// merged into JSON documents.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Metadata {
    pub engine: String,
    pub version: String,
    pub seed: u64,
    pub config: RunConfig,
}

impl Metadata {
    pub fn new(config: &RunConfig) -> Self {
        Self {
            engine: config.engine.as_str().to_owned(),
            version: VERSION.to_owned(),
            seed: config.seed,
            config: config.clone(),
        }
    }
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    #[serde(flatten)]
    metadata: Metadata,
    result: &'a T,
}

pub fn sidecar_json(config: &RunConfig) -> Result<Vec<u8>> {
    let mut v = serde_json::to_vec_pretty(&Metadata::new(config))?;
    v.push(b'\n');
    Ok(v)
}

/// JSON document with the metadata and a `result` member.
pub fn document_json<T: Serialize>(config: &RunConfig, result: &T) -> Result<Vec<u8>> {
    let doc = Document {
        metadata: Metadata::new(config),
        result,
    };
    let mut v = serde_json::to_vec_pretty(&doc)?;
    v.push(b'\n');
    Ok(v)
}

/// Sidecar path for a CSV output: `<out>.meta.json`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

/// `dir/name.csv` → `dir/name_<i>.csv`.
pub fn indexed_path(out: &Path, i: usize) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match out.extension() {
        Some(ext) => format!("{stem}_{i}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{i}"),
    };
    out.with_file_name(name)
}

/// A file to be written once every computation has succeeded.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub path: PathBuf,
    pub bytes: Vec<u8>,
}

/// Writes all artifacts, each through a temporary file renamed into place.
pub fn write_artifacts(artifacts: &[Artifact]) -> Result<()> {
    for a in artifacts {
        let mut tmp = a.path.as_os_str().to_owned();
        tmp.push(".partial");
        let tmp = PathBuf::from(tmp);
        let io_err = |source| CliError::Io {
            path: a.path.clone(),
            source,
        };
        fs::write(&tmp, &a.bytes).map_err(io_err)?;
        fs::rename(&tmp, &a.path).map_err(io_err)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip_with_seventeen_digits() {
        for v in [0.1, 1.0 / 3.0, 0.418_144_2, 1e-300, 2.0] {
            let s = format_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v);
            let digits = s.split('e').next().unwrap().replace(['.', '-'], "");
            assert_eq!(digits.len(), 17);
        }
    }

    #[test]
    fn trace_csv_round_trips() {
        let mut t = LocalizationTrace::new();
        t.push(0.0, 1.0).unwrap();
        t.push(0.5, 0.75).unwrap();
        let bytes = trace_csv(&t).unwrap();
        assert!(bytes.starts_with(b"tau,L\n"));
        assert_eq!(read_trace_csv(&bytes).unwrap(), vec![(0.0, 1.0), (0.5, 0.75)]);
    }

    #[test]
    fn paths() {
        assert_eq!(indexed_path(Path::new("a/d.csv"), 2), PathBuf::from("a/d_2.csv"));
        assert_eq!(indexed_path(Path::new("d"), 0), PathBuf::from("d_0"));
        assert_eq!(sidecar_path(Path::new("t.csv")), PathBuf::from("t.csv.meta.json"));
    }

    #[test]
    fn pulse_json_schema() {
        let s: PulseSequence = serde_json::from_str(r#"{"kicks":[{"tau":0,"P":1},{"tau":1.5,"P":0.5}]}"#).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.kicks()[1].strength, 0.5);
        assert!(serde_json::from_str::<PulseSequence>(r#"{"kicks":[{"tau":2,"P":1},{"tau":1,"P":1}]}"#).is_err());
        assert!(serde_json::from_str::<PulseSequence>(r#"{"kicks":[{"tau":-1,"P":1}]}"#).is_err());
    }
}
