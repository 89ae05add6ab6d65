//! End-to-end runs of the `subeq` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn subeq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subeq"))
        .args(args)
        .env("SUBEQ_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

fn generate(dir: &TempDir, family: &str, dim: &str) -> PathBuf {
    let path = dir.path().join(format!("{family}{dim}.json"));
    let out = subeq(&["generate", family, "--dim", dim, "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn generate_talata_writes_seven_rational_vertices() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "talata", "4");
    let v = json(&path);
    assert_eq!(v["ambient_dim"], 4);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 7);
    assert_eq!(v["vertices"][5], serde_json::json!(["2/3", "2/3", "2/3", "0"]));
    assert_eq!(v["family"]["family"], "talata");
    assert_eq!(v["family"]["eps"], "1/10");
    assert_eq!(v["recommended_norm"], "relative");
}

#[test]
fn generate_l1_subspace_carries_its_hyperplane() {
    let dir = TempDir::new().unwrap();
    let v = json(&generate(&dir, "l1subspace", "6"));
    assert_eq!(v["ambient_dim"], 7);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 8);
    let rows = v["affine_constraints"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0], serde_json::json!(["1", "1", "1", "1", "1", "1", "0", "0"]));
}

#[test]
fn generate_without_output_prints_json() {
    let out = subeq(&["generate", "hypercube", "--dim", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
}

#[test]
fn analyze_l1_subspace_report() {
    let dir = TempDir::new().unwrap();
    let input = generate(&dir, "l1subspace", "4");
    let report = dir.path().join("report.json");
    let out = subeq(&["analyze", input.to_str().unwrap(), "--output", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&report);
    assert_eq!(r["tool"], "subeq");
    assert_eq!(r["norm"], "l1");
    assert_eq!(r["instance_digest"].as_str().unwrap().len(), 64);
    assert_eq!(check(&r, "subequilateral")["status"], "true");
    assert_eq!(check(&r, "edge_antipodal")["status"], "true");
    assert_eq!(check(&r, "lemma3")["status"], "holds");
    assert_eq!(check(&r, "lambda")["values"]["ratio_squared"], "4");
    assert!(String::from_utf8_lossy(&out.stdout).contains("lemma3"));
}

#[test]
fn reingesting_a_report_reproduces_the_analysis() {
    let dir = TempDir::new().unwrap();
    let input = generate(&dir, "talata", "4");
    let first = dir.path().join("first.json");
    let second = dir.path().join("second.json");
    let a = subeq(&["analyze", input.to_str().unwrap(), "--output", first.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    let b = subeq(&[
        "analyze",
        first.to_str().unwrap(),
        "--norm",
        "relative",
        "--output",
        second.to_str().unwrap(),
    ]);
    assert_eq!(b.status.code(), Some(0));
    let (r1, r2) = (json(&first), json(&second));
    assert_eq!(r1["instance_digest"], r2["instance_digest"]);
    assert_eq!(r1["checks"], r2["checks"]);
    assert_eq!(check(&r1, "antipodal")["status"], "false");
    assert_eq!(check(&r1, "edge_antipodal")["status"], "true");
}

#[test]
fn certify_apex_pair_is_tight() {
    let dir = TempDir::new().unwrap();
    let input = generate(&dir, "l1subspace", "6");
    let report = dir.path().join("cert.json");
    let out = subeq(&[
        "certify",
        input.to_str().unwrap(),
        "--pair",
        "6",
        "7",
        "--output",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&report);
    let c = &check(&r, "lemma3_certificate")["witnesses"];
    assert_eq!(c["lower_bound"]["value"], "4");
    assert_eq!(c["distance"]["value"], "4");
    assert_eq!(c["tight"], true);
    assert_eq!(c["x_side"]["dominant_coefficient"], "1/6");
}

#[test]
fn certify_rejects_an_edge() {
    let dir = TempDir::new().unwrap();
    let input = generate(&dir, "l1subspace", "4");
    let out = subeq(&["certify", input.to_str().unwrap(), "--pair", "0", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn probe_in_the_plane_finds_a_parallelogram() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("probe.json");
    let out = subeq(&[
        "probe",
        "--dim",
        "2",
        "--iterations",
        "300",
        "--seed",
        "5",
        "--restarts",
        "2",
        "--output",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&report);
    assert_eq!(r["seed"], 5);
    let p = &check(&r, "probe")["values"];
    assert_eq!(p["best_score"], "4");
    assert_eq!(p["bound_violation"], Value::Null);
    assert_eq!(check(&r, "bound_consistency")["status"], "holds");
}

#[test]
fn bad_inputs_exit_one() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"ambient_dim": 2, "vertices": [["0","0"],["1","oops"]]}"#).unwrap();
    let missing = dir.path().join("missing.json");
    for args in [
        vec!["analyze", bad.to_str().unwrap()],
        vec!["analyze", missing.to_str().unwrap()],
        vec!["generate", "dodecahedron", "--dim", "3"],
        vec!["generate", "talata", "--dim", "4", "--eps", "zero"],
        vec!["probe", "--dim", "9"],
        vec!["verify-suite", "--criterion", "11"],
    ] {
        let out = subeq(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn verify_suite_prints_one_line_per_criterion() {
    let out = subeq(&["verify-suite", "--criterion", "6", "--criterion", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("criterion")).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.iter().all(|l| l.contains("PASS")));
}
