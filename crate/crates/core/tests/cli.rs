//! End-to-end checks of the `mcover` binary: outputs and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcover")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_input(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

const CHAIN5: &str = r#"{"n":5,"covers":[[0,1],[1,2],[2,3],[3,4]]}"#;
const N5: &str = r#"{"n":5,"covers":[[0,1],[1,2],[2,4],[0,3],[3,4]]}"#;

#[test]
fn mcover_of_chain_reports_formula_values() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_input(&dir, "c5.json", CHAIN5);
    let o = run(&["--in", p.to_str().unwrap(), "mcover", "-m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("size 12 (formula 12), length 8 (formula 8)"), "{s}");
    assert!(s.contains("lattice true"));
}

#[test]
fn mcover_dot_has_one_node_per_element() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_input(&dir, "c5.json", CHAIN5);
    let o = run(&["--in", p.to_str().unwrap(), "--format", "dot", "poset"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.contains("[label=")).count(), 5);
    assert_eq!(s.lines().filter(|l| l.contains("->")).count(), 4);
}

#[test]
fn poset_checks_print_named_values() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_input(&dir, "n5.json", N5);
    let o = run(&["--in", p.to_str().unwrap(), "poset", "--check", "lattice,trim"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "lattice: true, trim: true");
}

#[test]
fn tamari_reports_counts() {
    let o = run(&["tamari", "-n", "3", "-m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "elements 12 (Fuss-Catalan 12), J 6, M 6 (m*C(n,2) = 6)");
}

#[test]
fn exit_codes_are_stable() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_input(&dir, "bad.json", "{");
    let chain = write_input(&dir, "c5.json", CHAIN5);
    let unbounded = write_input(&dir, "anti.json", r#"{"n":2,"covers":[]}"#);
    assert_eq!(run(&["--in", bad.to_str().unwrap(), "poset"]).status.code(), Some(2));
    assert_eq!(run(&["tamari", "-n", "x"]).status.code(), Some(2));
    assert_eq!(run(&["--in", chain.to_str().unwrap(), "mcover", "-m", "0"]).status.code(), Some(3));
    assert_eq!(run(&["--in", unbounded.to_str().unwrap(), "mcover", "-m", "2"]).status.code(), Some(3));
    let claim = run(&["verify", "theorem-1.3", "--k-max", "2", "--l-max", "2", "--w-max", "2", "--m", "2"]);
    assert_eq!(claim.status.code(), Some(4));
    let budget = run(&["--budget", "0", "verify", "theorem-1.4", "--pairs", "3:2"]);
    assert_eq!(budget.status.code(), Some(5));
    assert_eq!(run(&["verify", "cardinality", "--exhaustive-n", "4", "--m", "2"]).status.code(), Some(0));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let conj = ["--format", "csv", "verify", "conjecture", "--n-max", "4", "--m-max", "3", "--no-timing"];
    let a = run(&conj);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, run(&conj).stdout);
    let s = stdout(&a);
    assert!(s.starts_with("n,m,path_count,injective,order_iso,elapsed_ms\n"));
    assert!(s.contains("4,3,140,true,true,0"), "{s}");

    let random = ["--seed", "7", "--format", "json", "verify", "random", "--count", "20", "--inner", "4", "--m", "2"];
    let r = run(&random);
    assert_eq!(r.status.code(), Some(0));
    assert_eq!(r.stdout, run(&random).stdout);
    assert_eq!(stdout(&r).lines().count(), 20);
    for line in stdout(&r).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["passed"], true);
    }
}

#[test]
fn strip_reports_decomposition() {
    let o = run(&["--format", "json", "strip", "-u", "0,1,2", "-m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["m"], 2);
    assert_eq!(v["delta"].as_array().unwrap().len(), 2);
}
