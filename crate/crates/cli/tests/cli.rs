use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use lpa::parser::{parse_laurent, serialize_laurent};
use lpa::{VariableTable, ZLaurent};
use serde_json::Value;

fn lpa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpa")).args(args).output().expect("run lpa")
}

fn stdout(args: &[&str]) -> String {
    let out = lpa(args);
    assert!(out.status.success(), "lpa {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

/// Cluster variables as a set, compared after parsing so that term order
/// and the order of factors do not matter.
fn variable_set(strings: impl IntoIterator<Item = String>, table: &VariableTable) -> BTreeSet<String> {
    strings
        .into_iter()
        .map(|s| {
            let e: ZLaurent = parse_laurent(&s, table).unwrap();
            serialize_laurent(&e.sign_normalized(), table)
        })
        .collect()
}

// The E4 session, with the frozen variables declared in session order.
const E4_SESSION: &str = r#"{
  "name": "e4-session",
  "frozen": ["a2", "a4", "a5", "a1", "a3"],
  "cluster": ["x1", "x2"],
  "exchange": {"x1": "a2*x2 + a4*a5", "x2": "a1*x1 + a3*a4"}
}"#;

const E4_SESSION_VARIABLES: [&str; 5] = [
    "(x1*a5*a1 + x2*a2*a3 + a4*a5*a3)/(x1*x2)",
    "(x1*a1 + a4*a3)/x2",
    "(x2*a2 + a4*a5)/x1",
    "x2",
    "x1",
];

#[test]
fn e4_session_parity() {
    let path = scratch("e4-session.json", E4_SESSION);
    let out = json(&["explore", "--seed", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out["seeds"], 5);
    let table = VariableTable::new(["x1", "x2"], ["a2", "a4", "a5", "a1", "a3"]).unwrap();
    let found: Vec<String> = out["variables"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
    assert_eq!(found.len(), 5);
    assert_eq!(variable_set(found, &table), variable_set(E4_SESSION_VARIABLES.map(String::from), &table));
}

#[test]
fn e4_builtin_explore() {
    let text = stdout(&["explore", "--seed", "e4"]);
    assert!(text.starts_with("seeds: 5, variables: 5\n"), "{text}");
}

const E5_SESSION: &str = r#"{
  "name": "e5-session",
  "frozen": ["a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8"],
  "cluster": ["x1", "x2", "x3"],
  "exchange": {
    "x1": "a5*x2 + a8*x3 + a2*a3",
    "x2": "a6*x1*x3 + a3*a4*x1 + a8*a1*x3 + a1*a2*a3",
    "x3": "a4*x1 + a7*x2 + a1*a2"
  }
}"#;

#[test]
fn e5_session_parity() {
    let path = scratch("e5-session.json", E5_SESSION);
    for seed in [path.to_str().unwrap(), "e5"] {
        let text = stdout(&["explore", "--seed", seed]);
        assert!(text.starts_with("seeds: 16, variables: 10\n"), "{seed}: {text}");
    }
}

#[test]
fn toy_explore_and_mutate() {
    let text = stdout(&["explore", "--seed", "a2-toy"]);
    assert!(text.starts_with("seeds: 5, variables: 5\n"));
    assert!(text.contains("(1 + x1 + x2)/(x1*x2)"));
    let text = stdout(&["mutate", "--seed", "a2-toy", "--at", "x1"]);
    assert!(text.starts_with("mutate 1 (x1): (1 + x2)/x1\n"), "{text}");
    let out = json(&["mutate", "--seed", "a2-toy", "--at", "1", "--at", "2", "--format", "json"]);
    assert_eq!(out["steps"][1]["new_variable"], "(1 + x1 + x2)/(x1*x2)");
}

#[test]
fn exit_codes() {
    assert_eq!(lpa(&["verify", "--seed", "e4"]).status.code(), Some(0));
    assert_eq!(lpa(&["verify", "--seed", "e5"]).status.code(), Some(0));
    assert_eq!(lpa(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lpa(&["mutate", "--seed", "a2-toy", "--at", "9"]).status.code(), Some(2));
    assert_eq!(lpa(&["explore", "--seed", "no-such-seed"]).status.code(), Some(2));
    assert_eq!(lpa(&["explore", "--seed", "e4", "--format", "dot"]).status.code(), Some(2));
    // a partial class cannot be verified
    assert_eq!(lpa(&["verify", "--seed", "e5", "--budget", "3"]).status.code(), Some(1));
}

#[test]
fn invalid_seed_file_is_rejected() {
    let path = scratch("lp1.json", r#"{"name": "bad", "frozen": [], "cluster": ["x1", "x2"], "exchange": {"x1": "1 + x1", "x2": "1 + x1"}}"#);
    let out = lpa(&["explore", "--seed", path.to_str().unwrap()]);
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("slot 1"));
}

#[test]
fn e4_dot_is_a_pentagon() {
    let dot = stdout(&["export", "--seed", "e4", "--format", "dot"]);
    assert!(dot.starts_with("graph exchange {"));
    assert_eq!(dot.lines().filter(|l| l.contains("[label=") && !l.contains("--")).count(), 5);
    assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 5);
}

#[test]
fn e5_json_graph() {
    let g = json(&["export", "--seed", "e5", "--format", "json"]);
    assert_eq!(g["nodes"].as_array().unwrap().len(), 16);
    assert_eq!(g["edges"].as_array().unwrap().len(), 24);
    let census = json(&["cycles", "--seed", "e5", "--format", "json"]);
    assert_eq!(census["census"], serde_json::json!({"4": 2, "5": 8}));
    assert_eq!(census["faces"], 10);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["export", "--seed", "e5", "--format", "json"],
        vec!["explore", "--seed", "e5", "--format", "json"],
        vec!["orbits", "--seed", "e5"],
        vec!["export", "--seed", "e4", "--format", "dot"],
    ] {
        let first = stdout(&args);
        assert_eq!(stdout(&args), first, "{args:?}");
        let mut parallel = args.clone();
        parallel.extend(["--workers", "3"]);
        assert_eq!(stdout(&parallel), first, "{parallel:?}");
    }
}

#[test]
fn e6_verify_and_quotient() {
    let out = lpa(&["verify", "--seed", "e6", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));

    let q = json(&["export", "--seed", "e6", "--quotient", "--format", "json", "--workers", "2"]);
    let nodes = q["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 15);
    assert_eq!(nodes.iter().map(|n| n["size"].as_u64().unwrap()).sum::<u64>(), 264);
}
