// Copyright 2026 photon-qsl Contributors
// SPDX-License-Identifier: Apache-2.0

//! End-to-end checks of the installed binary: output shape, determinism,
//! exit-code contract, and config plumbing. Everything runs the real
//! executable through `std::process::Command`.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

const HEADER: &str =
    "xi_rad,tau1_ps,tau2_ps,tau_inf_ps,tau_qsl_ps,n_blp,n_rhp,rhp_saturated,kappa_tau_abs,bures_angle_rad";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_photon-qsl"))
        .args(args)
        .output()
        .expect("binary must launch")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

#[test]
fn point_prints_a_two_line_csv_with_the_fixed_header() {
    let out = run(&["point"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], HEADER);
    assert_eq!(lines[1].split(',').count(), 10);
    assert!(text.ends_with('\n'));
}

#[test]
fn point_runs_are_deterministic() {
    let a = run(&["point"]);
    let b = run(&["point"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn set_overrides_reach_the_computation() {
    let out = run(&["point", "--set", "spectral.xi_rad=0.25"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let first = text.lines().nth(1).unwrap().split(',').next().unwrap();
    assert_eq!(first.parse::<f64>().unwrap(), 0.25);
}

#[test]
fn unknown_keys_are_a_config_error() {
    let out = run(&["point", "--set", "spectral.bogus=1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("spectral.bogus"), "stderr: {}", stderr_of(&out));
}

#[test]
fn sweep_writes_the_requested_file_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let args = |p: &Path| {
        vec![
            "sweep".to_string(),
            "--set".into(),
            "sweep.variable=xi".into(),
            "--set".into(),
            "sweep.start=0.2".into(),
            "--set".into(),
            "sweep.stop=1.2".into(),
            "--set".into(),
            "sweep.points=5".into(),
            "--output".into(),
            p.display().to_string(),
        ]
    };
    let argv: Vec<String> = args(&path);
    let refs: Vec<&str> = argv.iter().map(String::as_str).collect();
    let out = run(&refs);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let first = std::fs::read(&path).unwrap();
    assert_eq!(String::from_utf8_lossy(&first).lines().count(), 6);

    let out = run(&refs);
    assert!(out.status.success());
    let second = std::fs::read(&path).unwrap();
    assert_eq!(first, second, "sweep output must be byte-stable across runs");
}

#[test]
fn sweep_without_a_sweep_section_is_a_config_error() {
    let out = run(&["sweep"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn critical_reports_both_boundary_routes() {
    let out = run(&["critical"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("closed form"), "stdout: {text}");
    assert!(text.contains("sign-scan boundary"), "stdout: {text}");
}

#[test]
fn critical_outside_the_validity_window_is_a_numerical_error() {
    let out = run(&["critical", "--set", "tau_ps=5.0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("window"), "stderr: {}", stderr_of(&out));
}

#[test]
fn unwritable_output_path_is_an_io_error() {
    let out = run(&["point", "--output", "/nonexistent-dir-for-sure/x.csv"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn missing_config_file_is_an_io_error() {
    let out = run(&["point", "--config", "/nonexistent-dir-for-sure/cfg.txt"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn config_file_and_overrides_compose() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "# alternate working point").unwrap();
    writeln!(f, "spectral.xi_rad = 0.4").unwrap();
    writeln!(f, "alpha_rad = 0.6").unwrap();
    drop(f);

    let cfg = path.display().to_string();
    let out = run(&["point", "--config", &cfg, "--set", "spectral.xi_rad=0.9"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    let first = text.lines().nth(1).unwrap().split(',').next().unwrap();
    // The command line wins over the file.
    assert_eq!(first.parse::<f64>().unwrap(), 0.9);
}

#[test]
fn json_format_carries_metadata_and_columns() {
    let out = run(&["point", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["metadata"]["tool"].as_str(), Some("photon-qsl"));
    assert!(value["metadata"]["config"]["tau_ps"].as_f64().unwrap() > 39.0);
    assert_eq!(value["columns"]["xi_rad"].as_array().unwrap().len(), 1);
    assert!(value["columns"]["rhp_saturated"][0].as_bool().unwrap());
}

#[test]
fn check_reports_every_item_as_passing() {
    let out = run(&["check"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines.len() >= 8, "expected a full report, got: {text}");
    for line in &lines {
        assert!(line.starts_with("[PASS] "), "unexpected line: {line}");
    }
}
