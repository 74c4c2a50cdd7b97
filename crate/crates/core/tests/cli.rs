use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deltafock")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn hermite_csv_and_usage_error() {
    let o = run(&["hermite", "--smax", "2", "--s", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("2,2,1,2,1,4"));
    let bad = run(&["hermite", "--smax", "1", "--s", "2"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
}

#[test]
fn unknown_flags_are_usage_errors() {
    assert_eq!(run(&["gram", "--smax", "2", "--method", "guess"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["states", "--smax", "0"]).status.code(), Some(2));
    assert_eq!(run(&["states", "--smax", "3", "--samples", "4"]).status.code(), Some(2));
}

#[test]
fn gram_both_matches() {
    let o = run(&["gram", "--smax", "6", "--method", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("# scale=sqrt(s_max/pi)"));
    let rows: Vec<_> = text.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(rows.len(), 49);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
}

#[test]
fn verify_reports_truncation() {
    let o = run(&["verify", "--smax", "1", "--suite", "fock"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[exact-pass] truncation of states: |2> = |0>"));
    let j = run(&["verify", "--smax", "3", "--suite", "algebra", "--format", "json"]);
    let v: Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["data"]["passed"], true);
    assert_eq!(v["data"]["checks"].as_array().unwrap().len(), 16);
}

#[test]
fn states_is_deterministic_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("states.csv");
    let o = run(&["states", "--smax", "4", "--samples", "33", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&run(&["states", "--smax", "4", "--samples", "33"])));
    let header = written.lines().nth(1).unwrap();
    assert_eq!(header.split(',').count(), 6);
    assert_eq!(written.lines().count(), 2 + 33);
}

#[test]
fn unwritable_output_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("x.csv");
    let o = run(&["gram", "--smax", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn limit_json() {
    let o = run(&["limit", "--quantity", "gaussian", "--smax", "4,16,64", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let col: Vec<f64> = v["data"].as_array().unwrap().iter().map(|r| r["max_deviation"].as_f64().unwrap()).collect();
    assert_eq!(col.len(), 3);
    assert!(col[0] > col[1] && col[1] > col[2]);
    let h = run(&["limit", "--quantity", "hermite", "--s", "1", "--smax", "2,8"]);
    assert!(stdout(&h).lines().skip(1).all(|l| l.ends_with(",0.0000000000000000e0")));
}
