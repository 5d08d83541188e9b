use std::process::{Command, Output};

use ads3s3::io::params_to_json;
use ads3s3::solution::{make_unchecked, SimpleFamilyPoint};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ads3s3"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn bridge_reports_invariants() {
    let out = run(&["bridge", "--f", "1.6666667", "--b", "1.25", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["mu2"].as_f64().unwrap() - 0.53125).abs() < 1e-6);
    assert!((v["cosh_alpha"].as_f64().unwrap() - 1.9556234603).abs() < 1e-6);
}

#[test]
fn bridge_outside_region_is_a_validation_error() {
    let out = run(&["bridge", "--f", "3", "--b", "1.25", "--n", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cos2theta_s out of range"));
    assert!(out.stdout.is_empty());
}

#[test]
fn bridge_degenerate_corner_flags() {
    let v = json(&run(&["bridge", "--f", "1", "--b", "1", "--n", "1"]));
    assert_eq!(v["degenerate"]["static_ads"], Value::Bool(true));
    assert_eq!(v["degenerate"]["alpha_undefined"], Value::Bool(true));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["bridge", "--f", "x", "--b", "1"]).status.code(), Some(1));
    assert_eq!(run(&["bridge", "--f", "1.5"]).status.code(), Some(1));
    assert_eq!(run(&["bridge", "--f", "1.5", "--b", "1.2", "--format", "csv"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_family_point_passes() {
    let out = run(&["verify", "--f", "1.6666667", "--b", "1.25", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["points"].as_u64(), Some(15));
}

#[test]
fn verify_empty_grid_exits_one() {
    let out = run(&["verify", "--f", "1.6", "--b", "1.2", "--grid", "tau=0:1:0,sigma=0:1:2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("empty grid"));
    assert_eq!(run(&["verify", "--f", "1.6", "--b", "1.2", "--grid", ""]).status.code(), Some(1));
}

#[test]
fn verify_perturbed_params_file_exits_two() {
    let mut p = SimpleFamilyPoint::new(5.0 / 3.0, 1.25, 1).unwrap().solution().unwrap();
    p.lambda += 1e-3;
    let p = make_unchecked(p).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("params.json");
    std::fs::write(&path, params_to_json(&p)).unwrap();
    let out = run(&["verify", "--params", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["passed"], Value::Bool(false));
}

#[test]
fn verify_tolerance_override() {
    let out = run(&["verify", "--f", "1.6", "--b", "1.2", "--tol", "eom=0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(run(&["verify", "--f", "1.6", "--b", "1.2", "--tol", "nope=1"]).status.code(), Some(1));
}

#[test]
fn missing_params_file_exits_one() {
    let out = run(&["verify", "--params", "/nonexistent/params.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn charges_match_closed_form() {
    let out = run(&["charges", "--f", "1.6666667", "--b", "1.25", "--n", "1", "--coupling", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["analytic"]["mL"].as_f64().unwrap() - 1.2465278).abs() < 1e-6);
    assert!((v["analytic"]["mR"].as_f64().unwrap() - 2.1145833).abs() < 1e-6);
    assert!(v["gap"].as_f64().unwrap() < 1e-10);
    let scaled = v["scaled_casimirs"][0].as_f64().unwrap();
    assert!((scaled - 2.0 / std::f64::consts::PI * 1.2465278).abs() < 1e-6);
}

#[test]
fn particle_brackets_close() {
    let out = run(&["brackets", "--mode", "particle", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["max_algebra_residual"].as_f64().unwrap() <= 1e-6);
    assert!(v["jacobi_residual"].as_f64().unwrap() <= 1e-4);
    assert_eq!(v["points"].as_array().unwrap().len(), 20);
}

#[test]
fn string_brackets_close() {
    let out = run(&["brackets", "--mode", "string", "--seed", "3", "--count", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["max_algebra_residual"].as_f64().unwrap() <= 1e-5);
    assert!(v["max_block_residual"].as_f64().unwrap() <= 1e-5);
}

#[test]
fn scan_writes_csv_and_rejects_empty_range() {
    let out = run(&["scan", "--grid", "f=1:3:5,b=1:2:3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 15);
    assert_eq!(run(&["scan", "--grid", "f=1:3:0,b=1:2:3"]).status.code(), Some(1));
    assert_eq!(run(&["scan", "--grid", "f=3:1:4,b=1:2:3"]).status.code(), Some(1));
}

#[test]
fn sample_to_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = run(&[
            "sample", "--f", "1.6666667", "--b", "1.25", "--n", "2", "--tau-steps", "8", "--sigma-steps", "8",
            "--format", "csv", "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let first = std::fs::read(&a).unwrap();
    assert_eq!(first, std::fs::read(&b).unwrap());
    assert_eq!(String::from_utf8(first).unwrap().lines().count(), 1 + 64);
}

#[test]
fn parse_is_reachable_from_the_library() {
    let cli = ads3s3_cli::parse_args(["ads3s3", "scan", "--n", "2"]).unwrap();
    let out = ads3s3_cli::execute(&cli).unwrap();
    assert!(out.passed);
    assert!(out.text.starts_with('['));
}

#[test]
fn params_file_feeds_verify() {
    let out = run(&["params", "--f", "1.6666666666666667", "--b", "1.25", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let v = json(&run(&["verify", "--params", path.to_str().unwrap(), "--grid", "tau=0:0.5:2,sigma=-1:1:3"]));
    assert_eq!(v["passed"], Value::Bool(true));
}
