use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn jsj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jsj")).args(args).output().expect("run jsj")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn preset_emit_validates() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trefoil.gog");
    let out = jsj(&["preset", "trefoil", "--emit"]);
    assert!(out.status.success());
    fs::write(&path, &out.stdout).unwrap();
    let out = jsj(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["valid"], true);
}

#[test]
fn preset_listing() {
    let out = jsj(&["preset"]);
    let names = String::from_utf8(out.stdout).unwrap();
    assert!(names.lines().any(|l| l == "fig8"));
    assert_eq!(jsj(&["preset", "nope"]).status.code(), Some(1));
}

#[test]
fn parse_errors_carry_file_positions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.gog");
    fs::write(&path, "vertex A : cone_sfs {\n cone q 1 1\n}\n").unwrap();
    let out = jsj(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.gog:2:7: cone order must be ≥ 2"), "{err}");
}

#[test]
fn inline_query_answers() {
    let out = jsj(&["query", "preset:trefoil", "divisibility(h^2)"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["answer"]["max_n"], 6);
    assert_eq!(doc["complete"], true);
    assert_eq!(doc["claims"][0]["claim"], "power");
}

#[test]
fn no_trace_strips_steps() {
    let out = jsj(&["query", "preset:fig8", "reduce(x y x^-1 y^-1 y x y^-1 x^-1)", "--no-trace"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    for c in doc["claims"].as_array().unwrap() {
        if let Some(s) = c.get("steps") {
            assert!(s.as_array().unwrap().is_empty());
        }
    }
    assert!(doc["notes"].as_array().unwrap().iter().any(|n| n == "reduction traces omitted"));
}

#[test]
fn query_file_with_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.txt");
    fs::write(&path, "# checks\nreduce(h)\n\ncommute(h, q2 q1)\ncentralizer(h)\n").unwrap();
    let one = jsj(&["query", "preset:trefoil", path.to_str().unwrap()]);
    let two = jsj(&["query", "preset:trefoil", path.to_str().unwrap(), "--jobs", "2"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
    let docs = json(&one);
    assert_eq!(docs.as_array().unwrap().len(), 3);
    assert_eq!(docs[1]["answer"]["commute"], true);
}

#[test]
fn query_errors_and_budget_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.txt");
    fs::write(&path, "reduce(h)\ndivisibility(h zz)\n").unwrap();
    let out = jsj(&["query", "preset:trefoil", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("q.txt:2:16: unknown generator `zz`"), "{err}");

    let out = jsj(&["query", "preset:fig8", "centralizer(y)", "--budget", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["budget_exhausted"], true);
    let out = jsj(&["query", "preset:fig8", "centralizer(y)"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn fuzz_reports_no_crashes() {
    let out = jsj(&["fuzz", "--seed", "7", "--len", "48", "--count", "3000"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["crashes"], 0);
    assert_eq!(doc["inputs"], 3000);
}
