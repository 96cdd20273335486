//! The command-line binary: exit codes and machine-readable output.
use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_contact-engel")).args(args).output().expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr);
    (out.status.code().unwrap_or(-1), text)
}

#[test]
fn flat_marking() {
    let (code, out) = run(&["invariants", "--t", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("branch: flat"), "{out}");
}

#[test]
fn kerr_pair_passes() {
    let (code, _) = run(&["kerr", "verify", "--F", "t - (2*y3 - y1)/y2", "--t", "(x1 - 2*x3)/(-x2 + 2*x4)"]);
    assert_eq!(code, 0);
}

#[test]
fn g2_counts() {
    let (code, out) = run(&["g2", "verify", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["results"]["maurer_cartan"], "14/14");
    assert_eq!(v["results"]["jacobi"], "364/364");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["invariants", "--t", "x1 +"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["kerr", "section", "--H", "y1", "--at", "x0=0,x1=0,x2=1,x3=1,x4=1"]).0, 1);
    assert_eq!(run(&["tanaka", "prolong", "--g0", "borel"]).0, 0);
}

#[test]
fn report_file() {
    let path = std::env::temp_dir().join(format!("contact-engel-{}.json", std::process::id()));
    let (code, out) = run(&["cubic", "verify", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), out);
    std::fs::remove_file(path).unwrap();
}
