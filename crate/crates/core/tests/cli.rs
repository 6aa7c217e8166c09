//! The `codim-lab` binary: documented examples, formats and exit codes.

use std::process::{Command, Output};

use serde_json::Value;

fn codim_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_codim-lab"))
        .args(args)
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = codim_lab(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn codim_example() {
    let v = json(&["codim", "--m", "2", "--word", "fib", "--n", "3"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["results"][0]["n"], 3);
    assert_eq!(v["results"][0]["value"], "6");
    assert_eq!(v["config"]["word"], "mech:3,-1,5,2");
    assert_eq!(v["config"]["max_columns"], "5000000");
    assert_eq!(v["config"]["scan_budget"], 100000);
    assert!(v["timing_ms"].is_null());
}

#[test]
fn graded_codim_example() {
    let v = json(&[
        "graded-codim",
        "--m",
        "2",
        "--word",
        "fib",
        "--grading",
        "001",
        "--n",
        "2",
    ]);
    assert_eq!(v["results"][0]["value"], "8");
    assert_eq!(v["config"]["grading"], "001");
}

#[test]
fn verify_bounds_example() {
    let v = json(&[
        "verify-bounds",
        "--m",
        "2",
        "--word",
        "periodic:0",
        "--grading",
        "001",
        "--n-max",
        "8",
        "--n-max-unital",
        "4",
        "--relfree-n-max",
        "4",
        "--relfree-unital-n-max",
        "3",
        "--epsilon",
        "0.05",
    ]);
    let reports = v["results"][0]["reports"].as_array().unwrap();
    let dominates = reports.iter().find(|r| r["name"] == "graded-dominates").unwrap();
    assert_eq!(dominates["violations"].as_array().unwrap().len(), 0);
    assert_eq!(dominates["n_max"], 8);
}

#[test]
fn every_command_runs() {
    for args in [
        &["word", "--word", "periodic:01", "--length", "8"][..],
        &["complexity", "--word", "mech:-1,1,2,1", "--n-max", "10"],
        &["balance", "--word", "fib", "--lmax", "10"],
        &["partial-codim", "--n", "4", "--k", "2", "--unital"],
        &["window", "--word", "periodic:0", "--n", "2..6"],
        &["relfree", "--d0", "3", "--d1", "2", "--k", "2", "--nk", "1"],
        &["asymptotics", "--n", "1..4"],
    ] {
        let v = json(args);
        assert!(!v["results"].as_array().unwrap().is_empty(), "{args:?}");
    }
    let v = json(&["complexity", "--word", "mech:-1,1,2,1", "--n-max", "10"]);
    for (i, r) in v["results"].as_array().unwrap().iter().enumerate() {
        assert_eq!(r["complexity"], (i + 2).to_string());
    }
}

#[test]
fn csv_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.csv");
    let out = codim_lab(&[
        "graded-codim",
        "--n",
        "1..3",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("command,quantity,n,k,value"));
    assert!(text.contains("graded-codim,c_n^gr,3,,30"));
    assert!(text.contains("graded-codim,\"c_{k,n-k}\",3,1,"));
}

#[test]
fn record_timing_adds_a_number() {
    let v = json(&["codim", "--n", "2", "--record-timing"]);
    assert!(v["timing_ms"].is_f64());
}

#[test]
fn exit_codes() {
    let invalid = [
        &["codim", "--word", "periodic:", "--n", "2"][..],
        &["codim", "--word", "mech:3,1,5,2", "--n", "2"],
        &["graded-codim", "--grading", "01", "--n", "2"],
        &["codim", "--n", "0"],
        &["codim", "--m", "1", "--n", "2"],
        &["verify-bounds", "--epsilon", "0.7"],
        &["codim", "--n", "2", "--scan-budget", "0"],
        &["no-such-command"],
    ];
    for args in invalid {
        let out = codim_lab(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
    let out = codim_lab(&["codim", "--n", "7", "--max-columns", "1000"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("5040") && err.contains("1000"), "{err}");

    let out = codim_lab(&[
        "complexity",
        "--word",
        "sub:thue-morse",
        "--n-max",
        "20",
        "--scan-budget",
        "40",
    ]);
    assert_eq!(out.status.code(), Some(3));

    let out = codim_lab(&["word", "--word", "periodic:012"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 11"));
}
