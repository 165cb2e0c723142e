//! End-to-end tests of the command-line interface, including exit codes.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_singlattice")
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("singlattice-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("SINGLATTICE_MAX_BOX")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const FIG2: &str = "graph fig2\n\
v F0 sq=-2 g=1\nv F1 sq=-2\nv F2 sq=-2\nv F3 sq=-2\n\
e F0 F1\ne F0 F2\ne F0 F3\n\
cycle Zf F0=2 F1=1 F2=1 F3=1\n\
cycle mZf F0=-2 F1=-1 F2=-1 F3=-1\n";

#[test]
fn invariants_fig2() {
    let path = write_temp("fig2.graph", FIG2);
    let out = run(&["invariants", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("p_f = 2"));
    assert!(text.contains("p_a = 2"));
    assert!(text.contains("Z_f = F0:2 F1:1 F2:1 F3:1"));
}

#[test]
fn zariski_direct() {
    let out = run(&["zariski", "2", "9"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "br_m = 4\n");
}

#[test]
fn parse_error_is_exit_2() {
    let path = write_temp("syntax.graph", "v a sq=oops\n");
    let out = run(&["invariants", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_graph_is_exit_3() {
    let path = write_temp("posdef.graph", "v a sq=1\n");
    let out = run(&["invariants", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("minor"));
}

#[test]
fn failing_condition_is_exit_1() {
    let path = write_temp("plane_quartic.graph", "v C sq=-4 g=3\ncycle l C=-1\n");
    let out = run(&["condition", path.to_str().unwrap(), "--l", "l", "--mode", "exact"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("holds = false"));
    assert!(text.contains("witness = C:1"));
}

#[test]
fn holding_condition_is_exit_0() {
    let path = write_temp("plane_quartic2.graph", "v C sq=-4 g=3\ncycle l C=-2\n");
    let out = run(&["condition", path.to_str().unwrap(), "--l", "l", "--mode", "exact"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("margin = 4"));
}

#[test]
fn precondition_error_is_exit_4() {
    // minimal model of a cycle with positive chi
    let path = write_temp("a1.graph", "v a sq=-2\ncycle c a=1\n");
    let out = run(&["mc", path.to_str().unwrap(), "--cycle", "c"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn zf_special_name_resolves() {
    let path = write_temp("fig2b.graph", FIG2);
    let out = run(&["lambda", path.to_str().unwrap(), "--ideal", "Zf"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("lambda = 1"));
}

#[test]
fn bounds_fig2() {
    let path = write_temp("fig2c.graph", FIG2);
    let out = run(&["bounds", path.to_str().unwrap(), "--ideal", "Zf", "--pg", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("pa_plus_one = 3"));
    assert!(text.contains("lambda_plus_two = 3"));
    assert!(text.contains("pg_plus_one = 4"));
    assert!(text.contains("best = 3"));
}

#[test]
fn elliptic_seq_chain() {
    let path = write_temp(
        "chain.graph",
        "v E1 sq=-1 g=1\nv E2 sq=-2\nv E3 sq=-2\ne E1 E2\ne E2 E3\n",
    );
    let out = run(&["elliptic-seq", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("length = 3"));
    assert!(text.contains("Z_0 = E1:1 E2:1 E3:1"));
    assert!(text.contains("Z_2 = E1:1"));
}

#[test]
fn verify_respects_box_env() {
    let path = write_temp("fig2d.graph", FIG2);
    let out = Command::new(bin())
        .args(["verify", path.to_str().unwrap()])
        .env("SINGLATTICE_MAX_BOX", "5000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("graph_valid = pass"));
    assert!(!text.contains("= fail"));
}

#[test]
fn corpus_is_deterministic_and_passes() {
    let a = run(&["corpus"]);
    let b = run(&["corpus"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("HY6 p_a = 13 (expected 13) pass"));
    assert!(!stdout(&a).contains("fail"));
}

#[test]
fn printed_cycle_round_trips() {
    let path = write_temp("fig2e.graph", FIG2);
    let out = run(&["zf", path.to_str().unwrap()]);
    let text = stdout(&out);
    let printed = text.trim().strip_prefix("Z_f = ").unwrap();
    let line = format!("cycle rt {}\n", printed.replace(':', "="));
    let path2 = write_temp("fig2f.graph", &format!("{FIG2}{line}"));
    let out2 = run(&["mc", path2.to_str().unwrap(), "--cycle", "rt"]);
    assert_eq!(out2.status.code(), Some(0));
    assert!(stdout(&out2).contains("mc = F0:2 F1:1 F2:1 F3:1"));
}
