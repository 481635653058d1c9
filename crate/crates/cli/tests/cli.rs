use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus")
}

fn bundled_file() -> String {
    corpus_dir().join("pairs.bc").display().to_string()
}

fn bcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcc"))
        .args(args)
        .env_remove("BCC_MAX_PAIRS")
        .output()
        .expect("runs bcc")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn verdict_row(v: &Value) -> Vec<bool> {
    ["pg", "mst", "shd", "beh", "io", "may"]
        .iter()
        .map(|k| v["verdicts"][k].as_bool().unwrap())
        .collect()
}

#[test]
fn check_p1_q1() {
    let f = bundled_file();
    let out = bcc(&["check", &f, "p1", &f, "q1", "--all", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(verdict_row(&v["pairs"][0]), [true, true, true, true, false, true]);
    assert!(v["pairs"][0]["witness"]["io"].is_array());
    assert_eq!(v["classification"]["io"]["pre"], Value::Bool(false));
}

#[test]
fn check_p3_q3() {
    let f = bundled_file();
    let out = bcc(&["check", &f, "p3", &f, "q3", "--all", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(verdict_row(&json(&out)["pairs"][0]), [false, false, false, false, false, true]);
}

#[test]
fn check_exit_zero_when_all_hold() {
    let f = bundled_file();
    let out = bcc(&["check", &f, "p1", &f, "q1", "--relation", "pg", "--relation", "mst"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().next().unwrap();
    assert!(header.contains("pg") && header.contains("mst") && !header.contains("may"));
}

#[test]
fn client_against_client() {
    let f = bundled_file();
    let out = bcc(&["check", &f, "p1", &f, "p1", "--relation", "may", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pairs"][0]["verdicts"]["may"], Value::Bool(false));
}

#[test]
fn check_errors_exit_two() {
    let f = bundled_file();
    let out = bcc(&["check", &f, "p9", &f, "q1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("p9"));

    let out = bcc(&["check", &f, "p2", &f, "q2", "--max-pairs", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn max_pairs_from_environment() {
    let f = bundled_file();
    let out = Command::new(env!("CARGO_BIN_EXE_bcc"))
        .args(["check", &f, "p2", &f, "q2"])
        .env("BCC_MAX_PAIRS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn matrix_of_bundled_corpus() {
    let dir = corpus_dir().display().to_string();
    let out = bcc(&["matrix", &dir, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows: Vec<Vec<bool>> = v["pairs"].as_array().unwrap().iter().map(verdict_row).collect();
    assert_eq!(
        rows,
        [
            [true, true, true, true, false, true],
            [true, false, false, true, true, false],
            [false, false, false, false, false, true],
            [true, false, true, false, true, true],
        ]
    );
    assert_eq!(v["classification"]["may"]["post"], Value::Bool(false));
    assert_eq!(v["classification"]["mst"]["fix"], Value::Bool(true));

    let text = bcc(&["matrix", &dir]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.lines().nth(3).unwrap().starts_with("p3/q3"));
}

#[test]
fn json_is_deterministic() {
    let dir = corpus_dir().display().to_string();
    let a = bcc(&["matrix", &dir, "--json"]);
    let b = bcc(&["matrix", &dir, "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let a = bcc(&["verify", "--random", "40", "--seed", "7", "--json"]);
    let b = bcc(&["verify", "--random", "40", "--seed", "7", "--json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn empty_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let out = bcc(&["matrix", dir.path().to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pairs"], Value::Array(vec![]));
}

#[test]
fn unparsable_corpus_file() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("good.bc"), "p1 = !a.0\nq1 = ?a.0\n").unwrap();
    fs::write(dir.path().join("broken.bc"), "p2 = !a.\n").unwrap();
    let out = bcc(&["matrix", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("broken.bc"));
}

#[test]
fn verify_bundled_and_random() {
    let out = bcc(&["verify", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["should_not_beh"], serde_json::json!(["p4/q4"]));
    assert_eq!(v["beh_not_should"], serde_json::json!(["p2/q2"]));

    let out = bcc(&["verify", "--random", "100", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!String::from_utf8_lossy(&out.stdout).contains("dropped"));
}

#[test]
fn verify_zero_clients() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("z.bc"), "p1 = 0\nq1 = ?a.0\np2 = 0\nq2 = rec X.tau.X\n").unwrap();
    let out = bcc(&["verify", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn dot_export() {
    let f = bundled_file();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p1q1.dot");
    let out = bcc(&["dot", &f, "p1", &f, "q1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let dot = fs::read_to_string(&path).unwrap();
    assert_eq!(dot.matches("label=\"tau\"").count(), 1);
    assert_eq!(dot.matches("doublecircle").count(), 1);
    assert_eq!(dot.matches(" ‖ ").count(), 2);

    let out = bcc(&["dot", &f, "p2", &f, "q2"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("label=\"tau\"").count(), 2);
    assert!(dot.contains("n0 -> n1") && dot.contains("n1 -> n0"));

    let zero = dir.path().join("zero.bc");
    fs::write(&zero, "p = 0\n").unwrap();
    let z = zero.to_str().unwrap();
    let out = bcc(&["dot", z, "p", z, "p"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("shape=doublecircle").count(), 1);
    // only the start marker edge
    assert_eq!(dot.matches("->").count(), 1);
}

#[test]
fn dot_write_failure_exits_two() {
    let f = bundled_file();
    let out = bcc(&["dot", &f, "p1", &f, "q1", "--out", "/nonexistent/dir/x.dot"]);
    assert_eq!(out.status.code(), Some(2));
}
