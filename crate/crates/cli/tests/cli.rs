// Copyright 2026 The laxflow Authors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::Path;
use std::process::Command;

use laxflow_cli::output::{sha256_hex, MANIFEST_NAME};
use laxflow_cli::{execute, RunConfig};
use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_laxflow"))
}

fn run_json(config: Value) -> laxflow_cli::Outcome {
    let cfg: RunConfig = serde_json::from_value(config).unwrap();
    execute(&cfg.resolve().unwrap()).unwrap()
}

fn read_csv(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    r.records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect()
}

fn f(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn zero_data_gives_zero_csvs() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_json(json!({
        "command": "evolve", "profile": "zero", "K": 8,
        "times": ["0", "1", "-pi"], "out": dir.path()
    }));
    assert!(out.all_pass());
    for row in read_csv(&dir.path().join("coefficients.csv")) {
        assert_eq!((f(&row[2]), f(&row[3])), (0.0, 0.0));
    }
    let samples = read_csv(&dir.path().join("samples.csv"));
    assert_eq!(samples.len(), 3 * 16);
    assert!(samples.iter().all(|row| f(&row[2]) == 0.0));
}

#[test]
fn single_mode_linear_phase() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_json(json!({
        "command": "evolve", "equation": "bo", "profile": "single-mode:1:0.1",
        "K": 16, "schedule": "linear-case", "times": ["1"], "out": dir.path()
    }));
    assert!(out.all_pass());
    let rows = read_csv(&dir.path().join("coefficients.csv"));
    let row = rows.iter().find(|r| r[1] == "1").unwrap();
    assert!((f(&row[2]) - 0.1 * 1f64.cos()).abs() <= 1e-10);
    assert!((f(&row[3]) - 0.1 * 1f64.sin()).abs() <= 1e-10);
}

#[test]
fn square_wave_mass_stays_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_json(json!({
        "command": "evolve", "profile": "square-wave", "K": 64,
        "T": "3", "grid-points": 7, "out": dir.path()
    }));
    assert!(out.all_pass(), "{:?}", out.manifest.checks);
    let rows = read_csv(&dir.path().join("conserved.csv"));
    assert_eq!(rows.len(), 7);
    for row in rows {
        assert!(f(&row[1]).abs() <= 1e-12 && f(&row[2]).abs() <= 1e-12);
    }
}

#[test]
fn samples_have_ccm_columns() {
    let dir = tempfile::tempdir().unwrap();
    run_json(json!({
        "command": "evolve", "equation": "ccm-defocusing", "profile": "single-mode:2:0.3",
        "K": 8, "times": ["0.5"], "out": dir.path()
    }));
    let text = fs::read_to_string(dir.path().join("samples.csv")).unwrap();
    assert!(text.starts_with("t,x,re,im\n"));
}

#[test]
fn talbot_at_time_zero_returns_truncated_data() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_json(json!({
        "command": "talbot", "K": 64, "times": ["0"], "out": dir.path()
    }));
    assert!(out.all_pass(), "{:?}", out.manifest.checks);
    let rows = read_csv(&dir.path().join("panel_0.csv"));
    assert_eq!(rows.len(), 128);
    // Truncated square wave on the grid, summed directly.
    for row in rows {
        let x = f(&row[0]);
        let direct: f64 = (1..64)
            .step_by(2)
            .map(|k| 4.0 / (std::f64::consts::PI * k as f64) * (k as f64 * x).sin())
            .sum();
        let half: f64 = (1..32)
            .step_by(2)
            .map(|k| 4.0 / (std::f64::consts::PI * k as f64) * (k as f64 * x).sin())
            .sum();
        // The nonlinear curve keeps modes below K/2, the linear one below K.
        assert!((f(&row[1]) - half).abs() <= 1e-10, "{x}");
        assert!((f(&row[2]) - direct).abs() <= 1e-10, "{x}");
    }
}

#[test]
fn convergence_of_bandlimited_linear_data_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_json(json!({
        "command": "convergence", "profile": "explicit:0;0.2,0.1;0.05", "schedule": "linear-case",
        "ks": [8, 16], "kref": 64, "T": "2", "grid-points": 11, "out": dir.path()
    }));
    assert!(out.all_pass());
    for row in read_csv(&dir.path().join("convergence.csv")) {
        assert!(f(&row[2]) <= 1e-10, "{row:?}");
    }
    let summary: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["errors_non_increasing"], true);
}

#[test]
fn diagnostics_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = bin()
        .args(["diagnostics", "--profile", "zero", "--M", "64", "--out"])
        .arg(dir.path().join("ok"))
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));

    let broken = bin()
        .args(["diagnostics", "--M", "64", "--bound-scale", "0", "--out"])
        .arg(dir.path().join("broken"))
        .output()
        .unwrap();
    assert_eq!(broken.status.code(), Some(1));
    let manifest: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("broken").join(MANIFEST_NAME)).unwrap()).unwrap();
    assert_eq!(manifest["all_pass"], false);

    let bad = bin()
        .args(["diagnostics", "--M", "100"])
        .arg("--out")
        .arg(dir.path().join("bad"))
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("M"));
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["evolve", "--K", "0"],
        vec!["evolve", "--times", "pi/"],
        vec!["evolve", "--profile", "triangle"],
        vec!["evolve", "--equation", "kdv"],
        vec!["talbot", "--equation", "ccm-defocusing"],
        vec!["evolve", "--equation", "ccm-focusing", "--profile", "single-mode:1:2"],
    ] {
        let out = bin().args(&args).arg("--out").arg(dir.path()).output().unwrap();
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"command": "evolve", "bogus": 1}"#).unwrap();
    let out = bin().args(["evolve", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let config = |out: &Path| {
        json!({
            "command": "evolve", "equation": "ccm-defocusing", "profile": "random-sobolev:1:12:0.8",
            "seed": 9, "K": 12, "schedule": "full-staircase", "T": "5", "grid-points": 5, "out": out
        })
    };
    let a = run_json(config(&dir.path().join("a")));
    let b = run_json(config(&dir.path().join("b")));
    assert_eq!(a.manifest.files, b.manifest.files);
    for file in &a.manifest.files {
        let x = fs::read(dir.path().join("a").join(&file.path)).unwrap();
        let y = fs::read(dir.path().join("b").join(&file.path)).unwrap();
        assert_eq!(x, y, "{}", file.path);
        assert_eq!(sha256_hex(&x), file.sha256);
    }
}

#[test]
fn manifest_reproduces_its_run() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first");
    let status = bin()
        .args([
            "evolve",
            "--profile",
            "random-sobolev:0.5:10",
            "--seed",
            "3",
            "--K",
            "10",
            "--T",
            "2",
        ])
        .arg("--out")
        .arg(&first)
        .status()
        .unwrap();
    assert!(status.success());
    let second = dir.path().join("second");
    let status = bin()
        .args(["evolve", "--config"])
        .arg(first.join(MANIFEST_NAME))
        .arg("--out")
        .arg(&second)
        .status()
        .unwrap();
    assert!(status.success());
    let read =
        |p: &Path| -> Value { serde_json::from_str(&fs::read_to_string(p.join(MANIFEST_NAME)).unwrap()).unwrap() };
    let (m1, m2) = (read(&first), read(&second));
    assert_eq!(m1["files"], m2["files"]);
    let mut c1 = m1["config"].clone();
    c1["out"] = m2["config"]["out"].clone();
    assert_eq!(c1, m2["config"]);
}

#[test]
fn talbot_rejects_nothing_but_bo() {
    let cfg: RunConfig = serde_json::from_value(json!({"command": "talbot", "equation": "ccm-defocusing"})).unwrap();
    assert!(cfg.resolve().is_err());
}
