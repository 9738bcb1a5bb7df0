//! End-to-end runs of the `kkt-type` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kkt-type"))
}

fn problem(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../problems").join(name)
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&std::ffi::OsStr]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const INFEASIBLE: &str = "vars: x1 x2\nmin: x1^2 + x2^2\neq: x1 + x2 - 1\npoint: 0 0\n";
const NOT_KKT: &str = "vars: x1 x2\nmin: x2\nineq: x1\npoint: 0 0\n";

#[test]
fn classifies_a_problem_file() {
    let ex1 = problem("ex1.txt");
    let o = run(&[ex1.as_os_str()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("label: not an extremum point"), "{text}");
}

#[test]
fn infeasible_point_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "inf.txt", INFEASIBLE);
    let o = run(&[p.as_os_str()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("PointNotFeasible") || String::from_utf8_lossy(&o.stderr).contains("PointNotFeasible"));
}

#[test]
fn non_kkt_point_is_a_pipeline_error() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "nz.txt", NOT_KKT);
    let o = run(&[p.as_os_str()]);
    assert_eq!(o.status.code(), Some(2));
    let all = format!("{}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    assert!(all.contains("PointNotKkt"), "{all}");
}

#[test]
fn empty_batch_succeeds() {
    let o = run(&[]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn missing_file_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("absent.txt");
    let o = run(&[p.as_os_str()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_radius_is_rejected() {
    let ex1 = problem("ex1.txt");
    let o = run(&["--radius".as_ref(), "abc".as_ref(), ex1.as_os_str()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--radius"));
}

#[test]
fn json_reports_are_deterministic() {
    let ex2 = problem("ex2.txt");
    let a = run(&["--json".as_ref(), ex2.as_os_str()]);
    let b = run(&["--json".as_ref(), ex2.as_os_str()]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v.is_object());
}

#[test]
fn mixed_batch_reports_every_file() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "nz.txt", NOT_KKT);
    let ex1 = problem("ex1.txt");
    let o = run(&["--json".as_ref(), ex1.as_os_str(), bad.as_os_str()]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().map(Vec::len), Some(2));
}

#[test]
fn reads_json_problems() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "p.json",
        r#"{"variables":["x1","x2"],"objective":"x1^2+x2^2","point":["0","0"]}"#,
    );
    let o = run(&["--json-in".as_ref(), p.as_os_str()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("label: local minimizer"));
}
