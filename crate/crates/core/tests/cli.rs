use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dioph-sparse"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env_remove("DIOPH_SPARSE_B_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = run(&full);
    (o.status.code().unwrap(), serde_json::from_str(&stdout(&o)).unwrap())
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dioph-sparse-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn ints(v: &Value) -> Vec<i64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().parse().unwrap())
        .collect()
}

#[test]
fn positive_knapsack() {
    let (code, doc) = json(&["knapsack", "--positive", "--a", "3 5 7", "--b", "15"]);
    assert_eq!(code, 0);
    let x = ints(&doc["x"]);
    assert_eq!(3 * x[0] + 5 * x[1] + 7 * x[2], 15);
    assert!(x.iter().all(|&v| v >= 0));
    assert!(doc["support_size"].as_u64().unwrap() <= 2);
    assert_eq!(doc["verified"], Value::Bool(true));
    assert_eq!(ints(&doc["instance"]["a"]), vec![3, 5, 7]);
}

#[test]
fn mixed_knapsack() {
    let (code, doc) = json(&["knapsack", "--a", "6 -10 15", "--b", "-7"]);
    assert_eq!(code, 0);
    let x = ints(&doc["x"]);
    assert_eq!(6 * x[0] - 10 * x[1] + 15 * x[2], -7);
    assert_eq!(doc["instance"]["mode"], "mixed");
}

#[test]
fn infeasible_dioph() {
    let o = run(&["solve-dioph", "--a", "4 6", "--b", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let (code, doc) = json(&["solve-dioph", "--a", "4 6", "--b", "3"]);
    assert_eq!(code, 2);
    assert_eq!(doc["status"], "infeasible");
}

#[test]
fn dioph_from_files() {
    let a = temp_file("a.txt", "2 3\n1 0 1\n0 2 1\n");
    let b = temp_file("b.txt", "3 5\n");
    let (code, doc) = json(&[
        "solve-dioph",
        "--matrix",
        a.to_str().unwrap(),
        "--b-file",
        b.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let x = ints(&doc["x"]);
    assert_eq!(x[0] + x[2], 3);
    assert_eq!(2 * x[1] + x[2], 5);
    assert_eq!(doc["certificate"]["lattice_fingerprint_match"], true);
}

#[test]
fn semigroup() {
    let (code, doc) = json(&["solve-semigroup", "--a", "1 -1", "--b", "-4"]);
    assert_eq!(code, 0);
    let x = ints(&doc["x"]);
    assert_eq!(x[0] - x[1], -4);
    assert!(x.iter().all(|&v| v >= 0));

    let o = run(&["solve-semigroup", "--a", "1 2", "--b", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn factor() {
    let o = run(&["factor", "360"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2^3 * 3^2 * 5\n");
    let (_, doc) = json(&["factor", "360"]);
    assert_eq!(doc["display"], "2^3 * 3^2 * 5");
}

#[test]
fn sparsify_and_bounds() {
    let (code, doc) = json(&["sparsify", "--a", "6 10 15", "--tau", "1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["certificate"]["gamma_size"], 3);
    assert_eq!(doc["certificate"]["bound"], 3);

    let (code, doc) = json(&["bounds", "--a", "6 10 15"]);
    assert_eq!(code, 0);
    assert_eq!(doc["bounds"]["lattice_bound"], 3);
    assert_eq!(doc["bounds"]["knapsack_bound"], 3);
}

#[test]
fn worst_case_and_oracle() {
    let o = run(&["worst-case", "--m", "1", "--delta", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 3\n6 3 2\n");

    let (code, doc) = json(&["oracle", "--a", "3 5 7", "--b", "15"]);
    assert_eq!(code, 0);
    assert_eq!(doc["min_support"], 1);
    assert_eq!(doc["complete"], true);

    let (code, _) = json(&["oracle", "--a", "2 4", "--b", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn icr_scan() {
    let o = run(&["icr-scan", "--a", "2 3", "--b-max", "40"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("icr >= 2 (lower bound"));
}

#[test]
fn json_is_deterministic() {
    let args = ["--json", "solve-dioph", "--a", "4 6 9 15", "--b", "1"];
    let first = stdout(&run(&args));
    for _ in 0..3 {
        assert_eq!(stdout(&run(&args)), first);
    }
    let doc: Value = serde_json::from_str(&first).unwrap();
    let text = serde_json::to_string_pretty(&doc).unwrap();
    assert_eq!(text.trim_end(), first.trim_end());
}

#[test]
fn malformed_matrix_file() {
    let p = temp_file("bad.txt", "2 2\n1 2\n3 q\n");
    let o = run(&["sparsify", "--matrix", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.txt:3:3"), "{err}");
}

#[test]
fn b_cap_from_environment() {
    let o = bin()
        .args(["knapsack", "--a", "3 5", "--b", "1000"])
        .env("DIOPH_SPARSE_B_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}
