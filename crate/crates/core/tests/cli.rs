use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cantor-spectral"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn record(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn cantor_record_has_schema_and_arcs() {
    let out = run(&["cantor", "--xi", "1/3", "--level", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = record(&out);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["command"], "cantor");
    assert_eq!(r["arcs"].as_array().unwrap().len(), 8);
    assert!((r["b"].as_f64().unwrap() - 0.269577).abs() < 1e-6);
}

#[test]
fn census_csv_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("gaps.csv");
    let out = run(&["cantor", "--xi", "0.3", "--level", "6", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# schema=1"));
    assert_eq!(lines[1], "stage,count,expected_count,length,max_length_error");
    assert_eq!(lines.len(), 2 + 6);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["cantor", "--xi", "0.6"]).status.code(), Some(2));
    assert_eq!(run(&["herz", "--N", "0"]).status.code(), Some(2));
    assert_eq!(run(&["herz", "--s", "1.5"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    let out = run(&["model", "--M", "64", "--n-list", "1,2,4,8,16", "--radius-policy", "amplification:1e12"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("amplifies"));
}

#[test]
fn numerical_errors_exit_three() {
    let out = run(&["outer", "--grid", "4096", "--M", "1024", "--alias-threshold", "1e-30"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn failed_assertion_exits_one() {
    let out = run(&["synthcheck", "--grid", "4096", "--M", "512", "--residual-tol", "1e-12"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(record(&out)["passed"], false);
}

#[test]
fn herz_reads_series_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("f.json");
    let report = dir.path().join("r.csv");
    std::fs::write(&input, r#"{"M": 2, "coeffs": [[0, 1.0, 0.0], [1, -2.0, 0.0], [2, 1.0, 0.0]]}"#).unwrap();
    let out = run(&[
        "herz", "--s", "1.5", "--N", "8,16,32,64,128", "--input", input.to_str().unwrap(),
        "--report", report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(record(&out)["strictly_decreasing"], true);
    assert_eq!(std::fs::read_to_string(&report).unwrap().lines().count(), 2 + 5);
}

fn outputs(args: &[&str], dir: &Path, tag: &str) -> (Vec<u8>, Vec<u8>) {
    let json = dir.join(format!("{tag}.json"));
    let csv = dir.join(format!("{tag}.csv"));
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--json", json.to_str().unwrap(), "--csv", csv.to_str().unwrap()]);
    let out = run(&full);
    assert!(matches!(out.status.code(), Some(0 | 1)), "{}", String::from_utf8_lossy(&out.stderr));
    (std::fs::read(json).unwrap(), std::fs::read(csv).unwrap())
}

#[test]
fn model_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["model", "--measure-level", "6", "--M", "1024", "--n-list", "1,2,4,8,16,32"];
    let a = outputs(&args, dir.path(), "a");
    let b = outputs(&args, dir.path(), "b");
    assert_eq!(a, b);
}

#[test]
fn seed_controls_random_checks() {
    let a = run(&["--seed", "11", "weights", "--samples", "30"]);
    let b = run(&["--seed", "11", "weights", "--samples", "30"]);
    let c = run(&["--seed", "12", "weights", "--samples", "30"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(record(&a)["seed"], 11);
}

#[test]
fn outer_series_feeds_synthcheck() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("outer.json");
    let out = run(&["outer", "--grid", "8192", "--M", "1024", "--out", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let direct = run(&["synthcheck", "--grid", "8192", "--M", "1024", "--s-list", "0,1"]);
    let loaded = run(&["synthcheck", "--input", f.to_str().unwrap(), "--s-list", "0,1"]);
    assert_eq!(direct.status.code(), Some(0));
    assert_eq!(loaded.status.code(), Some(0));
    assert_eq!(record(&direct)["residuals"], record(&loaded)["residuals"]);
    assert_eq!(record(&direct)["bounds"], record(&loaded)["bounds"]);
}
