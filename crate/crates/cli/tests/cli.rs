use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_decospec"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const P3: &str = r#"{"n": 3, "edges": [[1, 2], [2, 3]]}"#;
const P4: &str = "1 2\n2 3\n3 4\n";
const DOUBLE_STAR: &str = r#"{"path": 2, "gadgets": [
  {"graph": {"n": 3, "edges": [[1, 2], [1, 3]]}, "root": 1},
  {"graph": {"n": 3, "edges": [[1, 2], [1, 3]]}, "root": 1}]}"#;

#[test]
fn charpoly_of_p4() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "p4.txt", P4);
    let r = json(&run(&["charpoly", "-i", s(&f)]));
    assert_eq!(r["command"], "charpoly");
    assert_eq!(r["exact"], true);
    assert_eq!(r["result"]["coefficients"], serde_json::json!(["1", "0", "-3", "0", "1"]));
}

#[test]
fn gap_certificate_round_trips() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "dp.json", DOUBLE_STAR);
    let out = run(&["gap", "-i", s(&f)]);
    let r = json(&out);
    assert_eq!(r["result"]["comparison"], "gap = 1");
    assert_eq!(r["result"]["holds"], true);
    let cert = write(&d, "cert.json", &String::from_utf8(out.stdout).unwrap());
    let v = json(&run(&["verify", "-i", s(&cert)]));
    assert_eq!(v["result"]["valid"], true);
}

#[test]
fn tampered_gap_certificate_is_rejected() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "dp.json", r#"{"path": 5}"#);
    let mut r = json(&run(&["gap", "-i", s(&f)]));
    r["result"]["comparison"] = "gap = 1".into();
    let cert = write(&d, "cert.json", &r.to_string());
    assert_eq!(run(&["verify", "-i", s(&cert)]).status.code(), Some(1));
}

#[test]
fn pst_on_p3_with_scan() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "p3.json", P3);
    let out = run(&["pst", "-i", s(&f), "-u", "1", "-v", "3", "--scan"]);
    let r = json(&out);
    assert_eq!(r["exact"], false);
    assert_eq!(r["result"]["feasible"], true);
    let t = r["result"]["numeric_min_time"].as_f64().unwrap();
    assert!((t - std::f64::consts::PI / 2f64.sqrt()).abs() < 1e-6, "{t}");
    assert!(r["result"]["scan"]["fidelity_at_min"].as_f64().unwrap() > 1.0 - 1e-9);
    let cert = write(&d, "cert.json", &String::from_utf8(out.stdout).unwrap());
    assert_eq!(json(&run(&["verify", "-i", s(&cert)]))["result"]["valid"], true);
}

#[test]
fn pst_on_p4_is_infeasible() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "p4.txt", P4);
    let r = json(&run(&["pst", "-i", s(&f), "-u", "1", "-v", "4"]));
    assert_eq!(r["result"]["feasible"], false);
    assert_eq!(r["result"]["failure_reason"]["condition"], "b");
}

#[test]
fn decorated_inputs_default_to_path_ends() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "dp.json", DOUBLE_STAR);
    let r = json(&run(&["strong-cospectral", "-i", s(&f)]));
    assert_eq!(r["inputs"]["u"], 1);
    assert_eq!(r["inputs"]["v"], 4);
    assert_eq!(r["result"]["general"]["strongly_cospectral"], true);
    assert_eq!(r["result"]["decorated"]["strongly_cospectral"], true);
}

#[test]
fn locate_counts_match_p3() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "p3.json", P3);
    let r = json(&run(&["locate", "-i", s(&f), "--theta", "0"]));
    assert_eq!(r["result"]["below_open"], 1);
    assert_eq!(r["result"]["below_closed"], 2);
    let r = json(&run(&["locate", "-i", s(&f), "--theta", "-3/2", "-u", "2"]));
    assert_eq!(r["result"]["below_open"], 0);
    let r = json(&run(&["locate", "-i", s(&f), "--theta", "-1", "-u", "2"]));
    assert_eq!(r["result"]["below_open"], 1);
    assert_eq!(r["result"]["below_closed"], 1);
}

#[test]
fn bridge_certificate_round_trips() {
    let d = TempDir::new().unwrap();
    let edges: String = (1..10).map(|k| format!("{k} {}\n", k + 1)).collect();
    let f = write(&d, "p10.txt", &edges);
    let out = run(&["bridge-certify", "-i", s(&f), "-u", "1", "-v", "10"]);
    let r = json(&out);
    assert_eq!(r["result"]["status"], "certified");
    let cert = write(&d, "cert.json", &String::from_utf8(out.stdout).unwrap());
    assert_eq!(json(&run(&["verify", "-i", s(&cert)]))["result"]["valid"], true);
}

#[test]
fn balanced_single_and_search() {
    let r = json(&run(&["balanced", "--parity", "odd", "--degrees", "3"]));
    assert_eq!(r["result"]["report"]["integral"], true);
    assert_eq!(r["result"]["report"]["spectrum"], serde_json::json!([2, 1, 0, 0, -1, -2]));
    let r = json(&run(&["balanced", "--parity", "even", "--degrees", "4"]));
    assert_eq!(r["result"]["report"]["spectrum"], serde_json::json!([2, 0, 0, 0, -2]));

    let d = TempDir::new().unwrap();
    let hits = d.path().join("hits.jsonl");
    let args = ["balanced", "--parity", "odd", "--max-depth", "2", "--max-degree", "4", "--results", s(&hits)];
    let first = json(&run(&args));
    let lines = std::fs::read_to_string(&hits).unwrap().lines().count();
    assert_eq!(first["result"]["specs_searched"].as_u64().unwrap() as usize, lines);
    assert_eq!(first["result"]["resumed"], 0);
    let second = json(&run(&args));
    assert_eq!(second["result"]["resumed"].as_u64().unwrap() as usize, lines);
    assert_eq!(std::fs::read_to_string(&hits).unwrap().lines().count(), lines);
    assert_eq!(first["result"]["integral"], second["result"]["integral"]);
}

#[test]
fn balanced_report_verifies() {
    let d = TempDir::new().unwrap();
    let out = run(&["balanced", "--parity", "odd", "--degrees", "3,2"]);
    json(&out);
    let cert = write(&d, "cert.json", &String::from_utf8(out.stdout).unwrap());
    assert_eq!(json(&run(&["verify", "-i", s(&cert)]))["result"]["valid"], true);
}

#[test]
fn integral_round_trips() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "p4.txt", P4);
    let out = run(&["integral", "-i", s(&f)]);
    assert_eq!(json(&out)["result"]["integral"], false);
    let cert = write(&d, "cert.json", &String::from_utf8(out.stdout).unwrap());
    assert_eq!(json(&run(&["verify", "-i", s(&cert)]))["result"]["valid"], true);
}

#[test]
fn other_reports_verify_by_recomputation() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "dp.json", DOUBLE_STAR);
    for cmd in ["fold", "alpha", "support", "charpoly"] {
        let out = run(&[cmd, "-i", s(&f)]);
        json(&out);
        let cert = write(&d, "cert.json", &String::from_utf8(out.stdout).unwrap());
        assert_eq!(json(&run(&["verify", "-i", s(&cert)]))["result"]["valid"], true, "{cmd}");
    }
}

#[test]
fn output_is_deterministic() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "dp.json", DOUBLE_STAR);
    let a = run(&["fold", "-i", s(&f)]);
    let b = run(&["fold", "-i", s(&f)]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn table_output() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "p4.txt", P4);
    let out = run(&["charpoly", "-i", s(&f), "--table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("result.coefficients: [1, 0, -3, 0, 1]"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    let d = TempDir::new().unwrap();
    let lopsided = write(
        &d,
        "dp.json",
        r#"{"path": 2, "gadgets": [{"graph": {"n": 2, "edges": [[1, 2]]}, "root": 1},
            {"graph": {"n": 1}, "root": 1}]}"#,
    );
    let out = run(&["gap", "-i", s(&lopsided)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hypothesis (1) violated at position 1"));

    let bad = write(&d, "bad.txt", "1 2\n2 x\n");
    let out = run(&["charpoly", "-i", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let p3 = write(&d, "p3.json", P3);
    assert_eq!(run(&["pst", "-i", s(&p3), "-u", "1", "-v", "9"]).status.code(), Some(1));
}

#[test]
fn sweep_subset_runs() {
    let r = json(&run(&["sweep", "--suite", "gap", "--suite", "strong-equivalence", "--max-total", "6", "--sequential"]));
    let suites = r["result"].as_array().unwrap();
    assert_eq!(suites.len(), 2);
    assert!(suites.iter().all(|x| x["violations"] == 0));
}
