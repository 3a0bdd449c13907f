use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_liebialg"));
    c.env_remove("LIEBIALG_WINDOW");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const SL2_W: &str = r#"{"ambient": "GxG", "rows": [
  ["1", "0", "0", "0", "0", "0"],
  ["0", "0", "0", "1", "0", "0"],
  ["0", "0", "1", "0", "0", "-1"]
]}"#;

#[test]
fn verify_a1_all_theorems() {
    let out = run(&["verify", "--algebra", "A1", "--theorems", "A1,A2,A3,B1,B2,C1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 6);
    assert!(entries.iter().all(|e| e["status"] == "pass"));
}

#[test]
fn verify_g2_a1_inapplicable() {
    let out = run(&["verify", "--algebra", "G2", "--theorems", "A1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["entries"].as_array().unwrap().iter().all(|e| e["status"] == "inapplicable(k>1)"));
}

#[test]
fn verify_rejects_equal_parameters() {
    let out = run(&["verify", "--c1", "1", "--c2", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn window_from_environment() {
    let out = bin().args(["verify", "--algebra", "A1", "--theorems", "A2"]).env("LIEBIALG_WINDOW", "8").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["config"]["window"], 8);
    let out = bin().args(["verify", "--algebra", "A1"]).env("LIEBIALG_WINDOW", "4").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(&["verify", "--algebra", "A1", "--roots", "1", "--theorems", "C1", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["entries"][0]["mu"], "-1");
    assert_eq!(run(&["verify", "--algebra", "A1", "--roots", "2"]).status.code(), Some(2));
}

#[test]
fn triples_a2() {
    let out = run(&["triples", "--algebra", "A2", "--alpha", "1", "--setting", "simple"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let admissible = v["triples"].as_array().unwrap().iter().filter(|t| t["admissible"] == true).count();
    assert_eq!(admissible, 3);
    assert_eq!(run(&["triples", "--algebra", "A2", "--alpha", "3"]).status.code(), Some(2));
    assert_eq!(run(&["triples", "--algebra", "A4", "--alpha", "1", "--bound", "10"]).status.code(), Some(2));
}

#[test]
fn check_sl2_candidate() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("W.json");
    std::fs::write(&w, SL2_W).unwrap();
    let out = run(&["check", w.to_str().unwrap(), "--ambient", "GxG:A1", "--reference", "delta_alpha:1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((&v["subalgebra"], &v["lagrangian"], &v["transversal"]), (&Value::Bool(true), &Value::Bool(true), &Value::Bool(true)));

    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, r#"{"ambient": "GxG", "rows": []}"#).unwrap();
    let out = run(&["check", empty.to_str().unwrap(), "--ambient", "GxG:A1", "--reference", "delta_alpha:1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["lagrangian"], false);
}

#[test]
fn check_reports_parse_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"ambient\": \"GxG\",\n  \"rows\": [[\"1\" \"0\"]]\n}\n").unwrap();
    let out = run(&["check", bad.to_str().unwrap(), "--ambient", "GxG:A1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3, column"), "{err}");
}

#[test]
fn describe_g2() {
    let out = run(&["describe", "--algebra", "G2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dim"], 14);
    assert_eq!(run(&["describe", "--algebra", "Z3"]).status.code(), Some(2));
}
