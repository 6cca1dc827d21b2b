use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use lattice_squeeze::io::read_trace_csv;
use lattice_squeeze_core::quantum::localization_closed_thermal;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lattice-squeeze"))
        .args(args)
        .current_dir(dir)
        .env_remove("LATTICE_SQUEEZE_THREADS")
        .output()
        .expect("binary runs")
}

fn files(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    v.sort();
    v
}

#[test]
fn classical_single_kick_trace_has_the_known_minimum() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["trace", "--engine", "classical", "--sigma", "0", "--kick", "1", "--tmax", "6", "--out", "t.csv"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = read_trace_csv(&fs::read(dir.path().join("t.csv")).unwrap()).unwrap();
    let (tau, l) = rows.iter().copied().min_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
    assert!((l - 0.42).abs() <= 0.01, "{l}");
    assert!((tau - 1.84).abs() <= 0.01, "{tau}");
    assert!(dir.path().join("t.csv.meta.json").exists());
}

#[test]
fn quantum_trace_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["trace", "--engine", "quantum", "--P", "0.5", "--sigma", "0", "--tmax", "12.6"]);
    assert!(out.status.success());
    let rows = read_trace_csv(&out.stdout).unwrap();
    assert_eq!(rows.len(), 1261);
    for (tau, l) in rows {
        assert!((l - localization_closed_thermal(tau, 0.5, 0.0)).abs() < 1e-8);
    }
}

#[test]
fn empty_pulse_file_gives_a_flat_trace() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("p.json"), r#"{"kicks": []}"#).unwrap();
    for engine in [&["--engine", "quantum"][..], &["--engine", "classical", "--method", "quadrature"][..]] {
        let mut args = vec!["trace", "--pulses", "p.json", "--tmax", "3"];
        args.extend_from_slice(engine);
        let out = run(dir.path(), &args);
        assert!(out.status.success());
        for (_, l) in read_trace_csv(&out.stdout).unwrap() {
            assert!((l - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn invalid_configs_fail_without_writing() {
    let dir = tempfile::tempdir().unwrap();
    let bad: [&[&str]; 5] = [
        &["trace", "--sigma", "-1", "--out", "a.csv"],
        &["trace", "--pulses", "missing.json", "--out", "a.csv"],
        &["density", "--out", "a.csv"],
        &["trace", "--kick", "1", "--accumulate", "2", "--out", "a.csv"],
        &["phase-space", "--engine", "quantum", "--times", "1", "--out", "a.csv"],
    ];
    for args in bad {
        let out = run(dir.path(), args);
        assert!(!out.status.success(), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    assert!(files(dir.path()).is_empty(), "{:?}", files(dir.path()));
}

#[test]
fn sidecar_reproduces_byte_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let first = run(
        dir.path(),
        &["trace", "--sigma", "0.3", "--samples", "20000", "--seed", "12", "--tmax", "4", "--dt", "0.1", "--out", "a.csv"],
    );
    assert!(first.status.success());
    let again = run(dir.path(), &["trace", "--config", "a.csv.meta.json", "--out", "b.csv"]);
    assert!(again.status.success(), "{}", String::from_utf8_lossy(&again.stderr));
    assert_eq!(fs::read(dir.path().join("a.csv")).unwrap(), fs::read(dir.path().join("b.csv")).unwrap());

    let other = run(dir.path(), &["trace", "--config", "a.csv.meta.json", "--seed", "13", "--out", "c.csv"]);
    assert!(other.status.success());
    assert_ne!(fs::read(dir.path().join("a.csv")).unwrap(), fs::read(dir.path().join("c.csv")).unwrap());
}

#[test]
fn density_files_per_time() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["density", "--times", "0,1,1.84", "--sigma", "0.1", "--grid", "256", "--out", "d.csv"]);
    assert!(out.status.success());
    assert_eq!(files(dir.path()), ["d.csv.meta.json", "d_0.csv", "d_1.csv", "d_2.csv"]);
    let text = fs::read_to_string(dir.path().join("d_0.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,f"));
    for line in lines {
        let f: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!((f - 1.0 / std::f64::consts::TAU).abs() < 1e-15);
    }
}

#[test]
fn quantum_density_and_phase_space() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["density", "--engine", "quantum", "--P", "10", "--times", "0.18", "--grid", "128"]);
    assert!(out.status.success());
    assert!(out.stdout.starts_with(b"x,f\n"));
    let out = run(dir.path(), &["phase-space", "--times", "1", "--samples", "10", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"][0]["x"].as_array().unwrap().len(), 10);
    assert_eq!(v["engine"], "classical");
}

#[test]
fn schedules_serialize_with_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["accumulate", "--kicks", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["sequence"]["kicks"].as_array().unwrap().len(), 3);
    assert_eq!(v["result"]["diagnostics"]["per_kick_minima"].as_array().unwrap().len(), 3);
    assert!(v["result"]["L_min"].as_f64().unwrap() < 0.27);

    let out = run(dir.path(), &["optimize", "--kicks", "2", "--starts", "4", "--budget", "1000", "--threads", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("kick,tau,P,L_min\n"));

    let out = run(dir.path(), &["optimize", "--engine", "quantum", "--p-grid", "1,2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 3);
}

#[test]
fn benchmark_exit_code_follows_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["benchmark", "--starts", "2", "--budget", "200", "--out", "bench"]);
    let md = fs::read_to_string(dir.path().join("bench.md")).unwrap();
    assert!(dir.path().join("bench.json").exists());
    let pass = md.contains("Overall: PASS");
    assert_eq!(out.status.success(), pass);
    assert_eq!(out.status.code(), Some(if pass { 0 } else { 1 }));
}
