use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_subcodes"));
    for var in ["THRESHOLD", "WORKERS", "SEED", "FORMAT", "MODE", "STRICT", "EMIT"] {
        c.env_remove(format!("SUBCODES_{var}"));
    }
    c
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/codes").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn analyze_bacon_shor() {
    let v = json(&run(&["analyze", data("bacon_shor.json").to_str().unwrap()]));
    assert_eq!(v["params"], "((9,2,16,3))_2");
    assert_eq!(v["distance"]["value"], 3);
    assert_eq!(v["distance"]["method"], "exhaustive");
    assert_eq!(v["swt_c"]["value"], 2);
}

#[test]
fn analyze_text_format() {
    let out = run(&["--format", "text", "analyze", data("five_qubit.json").to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("[[5,1,0,3]]_2"));
}

#[test]
fn transform_writes_code_file() {
    let dir = tempfile::tempdir().unwrap();
    let shrunk = dir.path().join("shrunk.json");
    let five = data("five_qubit.json");
    let out = run(&["transform", five.to_str().unwrap(), "--rule", "shrink-k", "--output", shrunk.to_str().unwrap()]);
    json(&out);
    let v = json(&run(&["analyze", shrunk.to_str().unwrap()]));
    assert_eq!(v["params"], "((5,1,2,3))_2");

    let v = json(&run(&["transform", shrunk.to_str().unwrap(), "--rule", "grow-k"]));
    assert_eq!(v["output"]["params"], "((5,2,1,3))_2");
}

#[test]
fn parameter_rules() {
    let v = json(&run(&["transform", "--rule", "shorten-n", "--params", "[[5,1,0,3]]_2 pure"]));
    assert_eq!(v["output"]["bracket"], "[[4,2,0,2]]_2 pure");
}

#[test]
fn family_member() {
    let v = json(&run(&["family", "--family", "v", "--q", "3", "--delta", "1", "--r", "5"]));
    assert_eq!(v["output"]["bracket"], "[[8,1,5,2]]_3 pure");
}

#[test]
fn table_csv() {
    let out = run(&["--format", "csv", "table1", "--q", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(reader.records().count(), 5);
}

#[test]
fn exit_codes() {
    let five = data("five_qubit.json");
    let bacon = data("bacon_shor.json");
    assert_eq!(run(&["transform", bacon.to_str().unwrap(), "--rule", "grow-k"]).status.code(), Some(4));
    assert_eq!(run(&["table1", "--q", "11"]).status.code(), Some(4));
    assert_eq!(run(&["analyze", "/nonexistent/code.json"]).status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["analyze", bad.to_str().unwrap()]).status.code(), Some(3));

    let out = bin().env("SUBCODES_THRESHOLD", "10").args(["--strict", "analyze", five.to_str().unwrap()]).output();
    assert_eq!(out.unwrap().status.code(), Some(6));
    assert_eq!(run(&["--bogus"]).status.code(), Some(2));
}

#[test]
fn emit_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let bacon = data("bacon_shor.json");
    for path in [&a, &b] {
        let out = run(&["--mode", "witness", "--emit", path.to_str().unwrap(), "analyze", bacon.to_str().unwrap()]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
