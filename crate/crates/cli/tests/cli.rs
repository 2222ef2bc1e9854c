use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn aw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aw")).args(args).output().expect("run aw")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn compute_p2_c4() {
    let out = aw(&["compute", "--graph", "path:2 x cycle:4", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["aw"], 4);
    assert_eq!(v["graph"], "path:2 x cycle:4");
    assert_eq!(v["bracket"], serde_json::json!([4, 4]));
    assert_eq!(v["certificate"]["r"], 3);
    assert_eq!(v["certificate"]["colors"].as_array().unwrap().len(), 8);
    assert!(v["stats"]["nodes"].is_u64());
}

#[test]
fn unbounded_compute_agrees() {
    let out = aw(&["compute", "--graph", "path:3 x cycle:6", "--no-bound", "--threads", "2", "--deterministic"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["aw"], 4);
    assert!(v["bound_used"].is_null());
}

#[test]
fn certificates_round_trip_through_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = aw(&["compute", "--graph", "cycle:9"]);
    fs::write(&path, &out.stdout).unwrap();
    let check = aw(&["compute", "--graph", "cycle:9", "--check", path.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0), "{}", stdout(&check));
    assert!(stdout(&check).contains("certificate OK"));

    // a coloring with a rainbow AP must be rejected
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"r":3,"colors":[1,2,3,1,1,1,1,1,1]}"#).unwrap();
    let check = aw(&["compute", "--graph", "cycle:9", "--check", bad.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(2));
    assert!(stdout(&check).contains("rainbow AP"));
}

#[test]
fn formula_with_derivation() {
    let out = aw(&["formula", "--family", "torus", "--params", "4,6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("4\n"), "{text}");
    assert!(text.contains("diam = 2 + 3 = 5 (odd)"), "{text}");
    let out = aw(&["formula", "--family", "path", "--params", "8", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["value"], 5);
}

#[test]
fn cycle_formula_uses_cache_file() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("primes.txt");
    let out = Command::new(env!("CARGO_BIN_EXE_aw"))
        .args(["formula", "--family", "cycle", "--params", "15"])
        .env("AW_CACHE", &cache)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().next(), Some("4"));
    assert_eq!(fs::read_to_string(&cache).unwrap(), "3 3 solver\n5 3 solver\n");
}

#[test]
fn verify_sweep() {
    let out = aw(&["verify", "--family", "path-cycle", "--m-range", "2..3", "--n-range", "3..6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("8 cells, 8 matched, 0 mismatched, 0 indeterminate"));
}

#[test]
fn timeouts_exit_three() {
    let out = aw(&["verify", "--family", "grid", "--m-range", "4", "--n-range", "5", "--timeout", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let out = aw(&["compute", "--graph", "cycle:12", "--timeout", "0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn extremal_counterexample_with_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("ex.dot");
    let out = aw(&["extremal", "--which", "counterexample", "--solve", "--dot", dot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["vertices"], 44);
    assert_eq!(v["diameter"], 8);
    assert_eq!(v["blue"], "v2,1");
    assert_eq!(v["green"], "v7,3");
    assert_eq!(v["aw"], 4);
    let dot = fs::read_to_string(dot).unwrap();
    assert_eq!(dot.matches("fillcolor=blue").count(), 1);
    assert_eq!(dot.matches("fillcolor=green").count(), 1);
}

#[test]
fn extremal_refusal_is_an_error() {
    let out = aw(&["extremal", "--which", "path-cycle", "--params", "4,6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("is even"));
}

#[test]
fn aps_listing() {
    let out = aw(&["aps", "--graph", "path:3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "# 1 3-APs in path:3\n1 0 1 2\n");
}

#[test]
fn scan_small() {
    let out = aw(&["scan-conjectures", "--max-tree", "4", "--cycles", "4,6", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["summary"]["counterexamples"], 0);
    assert_eq!(v["reference"]["aw"], 4);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(aw(&["compute"]).status.code(), Some(1));
    assert_eq!(aw(&["compute", "--graph", "wheel:5"]).status.code(), Some(1));
    assert_eq!(aw(&["formula", "--family", "grid", "--params", "4"]).status.code(), Some(1));
    assert_eq!(aw(&["verify", "--family", "torus", "--n-range", "3..4"]).status.code(), Some(1));
    assert_eq!(aw(&["--help"]).status.code(), Some(0));
}
