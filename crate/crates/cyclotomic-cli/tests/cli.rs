//! End-to-end checks of the `cyclo` binary: exit codes, JSON shapes, and
//! the determinism guarantee.

use std::process::{Command, Output};

fn cyclo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(args: &[&str]) -> serde_json::Value {
    let out = cyclo(args);
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn graph_91_json() {
    let v = stdout_json(&["graph", "--m", "3", "--gen", "1,9", "--kind", "full", "--format", "json"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["order"], 91);
    assert_eq!(v["valency"], 6);
    assert_eq!(v["rotation"]["holds"], true);
    assert_eq!(v["valency_report"]["matches"], true);
}

#[test]
fn graph_gaussian_65() {
    let v = stdout_json(&["graph", "--m", "4", "--gen", "7,4", "--format", "json"]);
    assert_eq!(v["order"], 65);
    assert_eq!(v["valency"], 4);
}

#[test]
fn graph_circulant_tl91() {
    let v = stdout_json(&["graph", "--n", "91", "--s-cyclic", "10", "--format", "json"]);
    assert_eq!(v["order"], 91);
    assert_eq!(v["valency"], 6);
}

#[test]
fn graph_dot_output() {
    let out = cyclo(&["graph", "--m", "4", "--gen", "2,1", "--format", "dot"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("graph cayley {"));
    assert!(text.contains("--"));
}

#[test]
fn zero_ideal_is_usage_error() {
    let out = cyclo(&["graph", "--m", "4", "--gen", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resource_limit_exit_code() {
    let out = cyclo(&["graph", "--m", "4", "--gen", "7,4", "--max-vertices", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn codes_91_finds_the_unique_code() {
    let v = stdout_json(&["codes", "--m", "3", "--gen", "1,9", "--t", "1"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["perfect_count"], 1);
    assert_eq!(v["agreement"], true);
    let perfect: Vec<&serde_json::Value> = v["candidates"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["is_perfect"] == true)
        .collect();
    assert_eq!(perfect.len(), 1);
    assert_eq!(perfect[0]["norm"], "7");
    assert_eq!(perfect[0]["member_count"], 13);
    assert_eq!(perfect[0]["associate_class"], "secondary");
}

#[test]
fn codes_91_t2_empty() {
    let v = stdout_json(&["codes", "--m", "3", "--gen", "1,9", "--t", "2"]);
    assert_eq!(v["perfect_count"], 0);
    assert_eq!(v["agreement"], true);
}

#[test]
fn codes_gaussian_65() {
    let v = stdout_json(&["codes", "--m", "4", "--gen", "7,4", "--t", "1"]);
    assert_eq!(v["perfect_count"], 1);
    assert_eq!(v["agreement"], true);
    let perfect: Vec<&serde_json::Value> = v["candidates"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["is_perfect"] == true)
        .collect();
    assert_eq!(perfect[0]["norm"], "5");
}

#[test]
fn power_basis_flag_changes_the_ideal() {
    // 1,9 in the power basis is 1 + 9 zeta_3, norm 73 (prime): no code.
    let v = stdout_json(&[
        "codes", "--m", "3", "--gen", "1,9", "--t", "1", "--power-basis",
    ]);
    assert_eq!(v["norm_alpha"], "73");
    assert_eq!(v["perfect_count"], 0);
}

#[test]
fn frobenius_91() {
    let v = stdout_json(&["frobenius", "--p", "3", "--n", "91"]);
    assert_eq!(v["schema"], 1);
    let candidates = v["results"][0]["candidates"].as_array().unwrap();
    assert!(candidates.iter().any(|c| c["a"] == 10));
    assert!(candidates.iter().all(|c| c["bridged"] == true));
}

#[test]
fn frobenius_empty_modulus() {
    let v = stdout_json(&["frobenius", "--p", "3", "--n", "9"]);
    assert_eq!(v["results"][0]["candidates"].as_array().unwrap().len(), 0);
}

#[test]
fn frobenius_range_includes_11() {
    let v = stdout_json(&["frobenius", "--p", "5", "--n-range", "11:40"]);
    let with_candidates: Vec<u64> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| !r["candidates"].as_array().unwrap().is_empty())
        .map(|r| r["n"].as_u64().unwrap())
        .collect();
    assert!(with_candidates.contains(&11));
    assert!(with_candidates.contains(&31));
}

#[test]
fn json_output_is_deterministic() {
    let a = cyclo(&["codes", "--m", "4", "--gen", "0,5", "--t", "1"]);
    let b = cyclo(&["codes", "--m", "4", "--gen", "0,5", "--t", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn accept_single_criterion() {
    let v = stdout_json(&["accept", "--only", "1", "--format", "json"]);
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["criteria"][0]["id"], 1);
}

#[test]
fn usage_error_exit_code() {
    let out = cyclo(&["codes", "--m", "3", "--gen", "1,9", "--t", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cyclo(&["codes", "--m", "4", "--gen", "1,1", "--rho", "--t", "1"]);
    assert_eq!(out.status.code(), Some(2));
}
