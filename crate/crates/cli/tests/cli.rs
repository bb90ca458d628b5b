use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regulator-lab"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn strip_timings(v: &mut Value) {
    for s in v["suites"].as_array_mut().unwrap() {
        s.as_object_mut().unwrap().remove("timings");
    }
}

#[test]
fn verify_ce_then_report_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = lab(dir.path(), &["verify", "ce", "--N", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(dir.path().join(".regulator-lab/last-run.json").exists());
    let out = lab(dir.path(), &["report", "--format", "json", "--out", "r.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = read_json(&dir.path().join("r.json"));
    assert_eq!(v["schema_version"], 1);
    let suite = &v["suites"][0];
    assert_eq!(suite["suite"], "ce");
    assert_eq!(suite["status"], "pass");
    assert_eq!(suite["witnesses"]["betti"], serde_json::json!([1, 1, 0, 1, 1]));
    assert!(suite["timings"]["elapsed_ms"].is_u64());
    assert_eq!(v["config"]["N"], 2);
}

#[test]
fn empty_run_reports_zero_suites() {
    let dir = tempfile::tempdir().unwrap();
    let out = lab(dir.path(), &["report", "--format", "json", "--out", "r.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(read_json(&dir.path().join("r.json"))["suites"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_all_small_and_tsv() {
    let dir = tempfile::tempdir().unwrap();
    let start = std::time::Instant::now();
    let out = lab(dir.path(), &["verify", "all", "--N", "1", "--run-file", "run.json"]);
    assert!(start.elapsed().as_secs_f64() < 5.0);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let out = lab(dir.path(), &["report", "--run-file", "run.json", "--format", "tsv", "--out", "r.tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let tsv = std::fs::read_to_string(dir.path().join("r.tsv")).unwrap();
    assert_eq!(tsv.lines().count(), 7);
    assert!(tsv.lines().skip(1).all(|l| l.split('\t').nth(1) == Some("pass")));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.json", "b.json"] {
        let out = lab(dir.path(), &["verify", "lazard", "--N", "1", "--seed", "17", "--run-file", name]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (mut a, mut b) = (read_json(&dir.path().join("a.json")), read_json(&dir.path().join("b.json")));
    strip_timings(&mut a);
    strip_timings(&mut b);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn lazard_suite_at_default_prime() {
    let dir = tempfile::tempdir().unwrap();
    let out = lab(dir.path(), &["verify", "lazard", "--p", "5", "--D", "12", "--m", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = read_json(&dir.path().join(".regulator-lab/last-run.json"));
    let suite = &v["suites"][0];
    assert!(suite["checks"].as_array().unwrap().iter().any(|c| c["name"] == "partial 0 primitive" && c["status"] == "pass"));
    assert!(suite["valuation_bounds"][0]["precision"].as_i64().unwrap() >= 1);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(lab(dir.path(), &["verify", "ce", "--N", "7"]).status.code(), Some(3));
    assert_eq!(lab(dir.path(), &["verify", "bogus"]).status.code(), Some(3));
    assert_eq!(lab(dir.path(), &["verify", "ce", "--p", "4"]).status.code(), Some(3));
    assert_eq!(lab(dir.path(), &["shadow", "--N", "3"]).status.code(), Some(3));
    // dividing by 5 in the partial element leaves no certified digit at m = 1
    assert_eq!(lab(dir.path(), &["verify", "lazard", "--N", "1", "--m", "1", "--D", "12"]).status.code(), Some(4));
    assert_eq!(lab(dir.path(), &["--help"]).status.code(), Some(0));
}

#[test]
fn shadow_records_cocycle_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = lab(dir.path(), &["shadow", "--N", "2", "--p", "5", "--m", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = read_json(&dir.path().join(".regulator-lab/last-run.json"));
    let suite = &v["suites"][0];
    assert_eq!(suite["suite"], "shadow");
    assert_eq!(suite["witnesses"]["chart_normalized"], serde_json::json!(["1", "0", "0", "1"]));
    assert!(suite["valuation_bounds"][0]["precision"].as_i64().unwrap() >= 6);
}
