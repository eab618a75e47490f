use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_coring-lab"));
    cmd.args(args).env_remove("CORING_LAB_MAX_SPACE");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let mut all: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    all.extend(["--json", &p]);
    let out = run(&all, &[]);
    let text = std::fs::read_to_string(&path).unwrap();
    (out.status.code().unwrap(), serde_json::from_str(&text).unwrap(), text)
}

fn dims(task: &Value, table: &str) -> Vec<u64> {
    task["tables"]
        .as_array()
        .unwrap()
        .iter()
        .find(|t| t["name"] == table)
        .unwrap_or_else(|| panic!("no table {table}"))["dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d.as_u64().unwrap())
        .collect()
}

#[test]
fn cartier_of_dual_numbers_over_gf2() {
    let f = fixture("dual_numbers_gf2.json");
    let (code, r, _) = run_json(&["cartier", "--coring", "dualnum", "--max-degree", "4", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(dims(&r["tasks"][0], "H_Ca"), vec![2, 2, 2, 2, 2]);
    assert_eq!(r["tasks"][0]["checks"][0]["theorem"], "Def-Cartier");
}

#[test]
fn verify_duality_on_dual_numbers_passes() {
    let f = fixture("dual_numbers_gf3.json");
    let (code, r, _) = run_json(&["verify-duality", "--coring", "dualnum", "--max-degree", "3", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    let checks = r["tasks"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["theorem"] == "Thm-coringtoalg"));
    assert!(checks.iter().filter(|c| c["required"] == true).all(|c| c["passed"] == true));
}

#[test]
fn validate_fixture_corpus() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let p = entry.unwrap().path();
        if p.extension().is_some_and(|e| e == "json") {
            let out = run(&["validate", p.to_str().unwrap()], &[]);
            assert_eq!(out.status.code(), Some(0), "{}", p.display());
            n += 1;
        }
    }
    assert!(n >= 5);
}

#[test]
fn reports_are_byte_identical() {
    let f = fixture("matrix_gf3.json");
    let args = ["braces-check", "--seed", "11", "--samples", "15", f.to_str().unwrap()];
    let (_, r, a) = run_json(&args);
    let (_, _, b) = run_json(&args);
    assert_eq!(a, b);
    assert_eq!(r["seed"], 11);
    assert!(r.get("timing_ms").is_none());
}

#[test]
fn document_tasks_run_when_no_target_is_given() {
    let f = fixture("deformations_gf3.json");
    let (code, r, _) = run_json(&["mc-check", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["tasks"].as_array().unwrap().len(), 3);
}

#[test]
fn tensor_extension_reports_the_kunneth_check() {
    let f = fixture("matrix_gf3.json");
    let (code, r, _) = run_json(&["hochschild", "--extension", "dn_tensor_t2", "--max-degree", "2", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    let checks = r["tasks"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["theorem"] == "Thm-tensorDecomp" && c["passed"] == true));
}

#[test]
fn mathematical_failure_exits_one() {
    // θ lands in the opposite of the twisted convolution algebra for a nonabelian group
    let f = fixture("yd_s3_q.json");
    let out = run(&["entwine", "--entwining", "yd_s3", f.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn input_errors_exit_two() {
    let f = fixture("dual_numbers_gf2.json");
    let f = f.to_str().unwrap();
    assert_eq!(run(&["cartier", "/nonexistent/doc.json"], &[]).status.code(), Some(2));
    assert_eq!(run(&["cartier", "--coring", "nope", f], &[]).status.code(), Some(2));
    assert_eq!(run(&["entwine", f], &[]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate", f], &[]).status.code(), Some(2));
    assert_eq!(run(&["braces-check", "--structure", "sideways", f], &[]).status.code(), Some(2));
    assert_eq!(run(&["cartier", f], &[("CORING_LAB_MAX_SPACE", "lots")]).status.code(), Some(2));
    let capped = run(&["cartier", "--max-degree", "6", f], &[("CORING_LAB_MAX_SPACE", "20")]);
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("error"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"field": "GF(2)", "algebras": {"a": {"type": "opposite", "of": "b"}}}"#).unwrap();
    assert_eq!(run(&["validate", bad.to_str().unwrap()], &[]).status.code(), Some(2));
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["validate", bad.to_str().unwrap()], &[]).status.code(), Some(2));
}
