use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const TABLE3: &str = include_str!("../../core/tests/fixtures/table3.md");

fn clifflab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clifflab")).args(args).env_remove("CLIFFLAB_MAX_RANK").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn verify_all_lists_every_suite() {
    let out = clifflab(&["verify-all", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["config"]["seed"], 7);
    assert_eq!(v["suites"].as_array().unwrap().len(), 12);
    assert!(v.get("timing_ms").is_none());
}

#[test]
fn timing_only_on_request() {
    let out = clifflab(&["verify-all", "--timing"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["timing_ms"].as_object().unwrap().len(), 12);
}

#[test]
fn table3_markdown() {
    let out = clifflab(&["classify", "--table", "3", "--format", "markdown"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), TABLE3);
}

#[test]
fn table2_csv() {
    let out = clifflab(&["classify", "--table", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("r,type of E,M,dimension of M\n"));
    assert_eq!(text.lines().count(), 15);
    assert!(text.contains("8,projective if k odd,SO(k+8)/SO(k)×SO(8),\"8k, k ≥ 2\""));
}

#[test]
fn candidate_verdicts() {
    let v = json(&clifflab(&["classify", "--candidate", "case4", "--p", "5", "--q", "2"]));
    assert_eq!(v["reason"], "fails_divisibility_b");
    let v = json(&clifflab(&["classify", "--candidate", "case7", "--p", "2", "--q", "3"]));
    assert_eq!(v["reason"], "admissible");
    assert_eq!(v["dim"], 24);
    let v = json(&clifflab(&["classify", "--candidate", "E₈/Spin⁺(16)"]));
    assert_eq!(v["r"], 16);
    assert_eq!(clifflab(&["classify", "--candidate", "case4", "--p", "5"]).status.code(), Some(2));
    assert_eq!(clifflab(&["classify", "--candidate", "case12"]).status.code(), Some(2));
    assert_eq!(clifflab(&["classify"]).status.code(), Some(2));
}

#[test]
fn cp4_spectrum() {
    let v = json(&clifflab(&["curvature", "--model", "cp4", "--check", "spectrum"]));
    let spec: Vec<(i64, i64)> = v["result"]["spectrum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["eigenvalue"].as_i64().unwrap(), e["multiplicity"].as_i64().unwrap()))
        .collect();
    assert_eq!(spec, vec![(0, 12), (4, 15), (20, 1)]);
}

#[test]
fn curvature_checks_pass() {
    for model in ["s8", "hp2"] {
        for check in ["identities", "cc"] {
            let out = clifflab(&["curvature", "--model", model, "--check", check]);
            assert_eq!(out.status.code(), Some(0), "{model} {check}");
            assert_eq!(json(&out)["passed"], true);
        }
    }
}

#[test]
fn repgen_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("rep.json");
    let s = dir.path().join("s.json");
    let report = dir.path().join("report.json");
    let p = |x: &Path| x.to_str().unwrap().to_string();
    assert!(clifflab(&["repgen", "--rank", "7", "--kind", "even", "--copies", "1", "--out", &p(&rep)]).status.success());
    let header: Value = serde_json::from_str(&std::fs::read_to_string(&rep).unwrap()).unwrap();
    assert_eq!((header["rank"].as_u64(), header["dim"].as_u64(), header["kind"].as_str()), (Some(7), Some(8), Some("even")));
    for suite in ["relations", "orthogonality", "hodge", "universality"] {
        let out = clifflab(&["verify", "--structure", &p(&rep), "--suite", suite, "--report", &p(&report)]);
        assert_eq!(out.status.code(), Some(0), "{suite}: {}", String::from_utf8_lossy(&out.stderr));
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(v["schema"], 1);
    }
    assert!(clifflab(&["repgen", "--rank", "6", "--structure", "--out", &p(&s)]).status.success());
    assert_eq!(clifflab(&["verify", "--structure", &p(&s), "--suite", "relations"]).status.code(), Some(0));
    assert_eq!(clifflab(&["verify", "--structure", &p(&s), "--suite", "hodge"]).status.code(), Some(2));
}

#[test]
fn tampered_structure_fails_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("s.json");
    let p = s.to_str().unwrap();
    assert!(clifflab(&["repgen", "--rank", "3", "--structure", "--out", p]).status.success());
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&s).unwrap()).unwrap();
    v["j"][0]["data"][1] = Value::from(2);
    std::fs::write(&s, v.to_string()).unwrap();
    let out = clifflab(&["verify", "--structure", p, "--suite", "relations"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn malformed_input_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    for text in ["{not json", "{\"n\": 4, \"r\": 2, \"j\": [{\"i\": 1, \"j\": 2, \"data\": [1, 2]}]}", "[]"] {
        std::fs::write(&bad, text).unwrap();
        let out = clifflab(&["verify", "--structure", bad.to_str().unwrap(), "--suite", "relations"]);
        assert_eq!(out.status.code(), Some(2), "{text}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("bad.json"));
    }
    let missing = dir.path().join("missing.json");
    assert_eq!(clifflab(&["verify", "--structure", missing.to_str().unwrap(), "--suite", "relations"]).status.code(), Some(3));
}

#[test]
fn usage_errors() {
    assert_eq!(clifflab(&["curvature", "--model", "cp9", "--check", "cc"]).status.code(), Some(2));
    assert_eq!(clifflab(&["classify", "--table", "4"]).status.code(), Some(2));
    assert_eq!(clifflab(&["repgen", "--rank", "0"]).status.code(), Some(2));
    assert_eq!(clifflab(&["repgen", "--rank", "5", "--copies", "1", "--minus", "2"]).status.code(), Some(2));
    assert_eq!(clifflab(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn emit_tables_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for d in [&a, &b] {
        assert!(clifflab(&["emit-tables", d.to_str().unwrap()]).status.success());
    }
    for f in ["table1.md", "table2.md", "table3.md", "tables.json"] {
        let x = std::fs::read(a.join(f)).unwrap();
        assert!(!x.is_empty());
        assert_eq!(x, std::fs::read(b.join(f)).unwrap(), "{f}");
    }
    assert_eq!(std::fs::read_to_string(a.join("table3.md")).unwrap(), TABLE3);
    let v: Value = serde_json::from_slice(&std::fs::read(a.join("tables.json")).unwrap()).unwrap();
    assert_eq!(v["tables"]["table2"].as_array().unwrap().len(), 14);
}

#[test]
fn emit_tables_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain");
    std::fs::write(&file, "x").unwrap();
    let out = clifflab(&["emit-tables", file.join("sub").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("plain"));
}
