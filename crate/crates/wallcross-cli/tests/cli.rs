use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const RUNNING: &str = r#"{"surface": {"preset": "BlP2", "params": {"n": 1}},
  "delta": [1, 0], "c": 2, "L_minus": [3, -2], "L_plus": [3, -1], "alpha": [1, 0]}"#;

fn write_config(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str], config: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wallcross"))
        .args(args)
        .arg("--config")
        .arg(config)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn delta_on_running_example() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "run.json", RUNNING);
    let out = run(&["delta"], &cfg);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["total"], "39/8");
    assert_eq!(v["walls"].as_array().unwrap().len(), 1);
    assert_eq!(v["walls"][0]["t"], "1/2");
    assert_eq!(v["walls"][0]["zeta"], serde_json::json!([1, -2]));
}

#[test]
fn closed_formula_agrees_and_km_rescales() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "run.json", RUNNING);
    let closed = json(&run(&["delta", "--formula", "closed"], &cfg));
    assert_eq!(closed["total"], "39/8");
    let km = json(&run(&["delta", "--km-normalization"], &cfg));
    assert_eq!(km["total"], "78");
    assert_eq!(km["normalization"], "km");
}

#[test]
fn equal_endpoints_have_no_walls() {
    let dir = TempDir::new().unwrap();
    let body = RUNNING.replace("[3, -2]", "[3, -1]");
    let cfg = write_config(&dir, "same.json", &body);
    let out = run(&["walls"], &cfg);
    assert!(out.status.success());
    assert_eq!(json(&out)["walls"], serde_json::json!([]));
}

#[test]
fn walls_oracle_cross_check_passes() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "run.json", RUNNING);
    let out = run(&["walls", "--oracle-radius", "8"], &cfg);
    assert!(out.status.success());
    assert_eq!(json(&out)["oracle"]["agrees"], true);
}

#[test]
fn surface_reports_invariants() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "s.json",
        r#"{"surface": {"preset": "BlP2", "params": {"n": 3}}}"#,
    );
    let v = json(&run(&["surface"], &cfg));
    assert_eq!(v["K2"], 6);
    assert_eq!(v["b2"], 4);
    assert_eq!(v["signature"], serde_json::json!([1, 3]));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "run.json", RUNNING);
    for sub in ["walls", "delta", "flips"] {
        let a = run(&[sub], &cfg).stdout;
        let b = run(&[sub], &cfg).stdout;
        assert!(!a.is_empty());
        assert_eq!(a, b, "{sub} output differs between runs");
    }
}

#[test]
fn out_flag_and_table_formats() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "run.json", RUNNING);
    let target = dir.path().join("report.csv");
    let out = run(
        &[
            "delta",
            "--format",
            "csv",
            "--out",
            target.to_str().unwrap(),
        ],
        &cfg,
    );
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&target).unwrap();
    assert!(text.starts_with("zeta,t,ell,h,sign,a,value\n"));
    assert!(text.contains("total,,,,,,39/8"));

    let md = run(&["flips", "--format", "md"], &cfg);
    assert!(String::from_utf8(md.stdout)
        .unwrap()
        .starts_with("| zeta |"));
}

#[test]
fn bad_input_exits_with_code_two() {
    let dir = TempDir::new().unwrap();
    let missing = write_config(&dir, "m.json", r#"{"surface": {"preset": "P2"}}"#);
    let out = run(&["walls"], &missing);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("delta"));

    let unknown = write_config(
        &dir,
        "u.json",
        r#"{"surface": {"preset": "P2"}, "oops": 1}"#,
    );
    assert_eq!(run(&["surface"], &unknown).status.code(), Some(2));
}

#[test]
fn verify_reports_every_criterion() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "v.json", r#"{"surface": {"preset": "P2"}}"#);
    let out = run(&["verify"], &cfg);
    // a handful of tabulated constants disagree with recomputation, so verify is red
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 9);
    assert_eq!(v["passed"], false);
}
