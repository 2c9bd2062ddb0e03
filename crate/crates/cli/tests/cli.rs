use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_udcrystal")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn enumerate_level_one() {
    let out = run(&["enumerate", "--level", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 8);
    assert_eq!(v["elements"].as_array().unwrap().len(), 8);
    assert_eq!(v["elements"][0]["context"]["level"], 1);
    assert_eq!(v["elements"][0]["b"].as_array().unwrap().len(), 6);
}

#[test]
fn graph_in_dot() {
    let out = run(&["graph", "--level", "1", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.contains("\"0_0_0_0_0_0\" -> \"1_0_0_0_0_0\" [label=\"0\"]"));
    // DOT is only offered for graphs.
    assert_eq!(run(&["enumerate", "--level", "1", "--format", "dot"]).status.code(), Some(2));
}

#[test]
fn verify_iso_small_box() {
    let out = run(&["verify-iso", "--box", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "verified");
    assert_eq!(v["points"], 15625);
    let two_jobs = run(&["verify-iso", "--box", "2", "--jobs", "2"]);
    assert_eq!(out.stdout, two_jobs.stdout);
}

#[test]
fn tropicalize_two_forms() {
    let out = run(&["tropicalize", "--expr", "c*x0/x1 + x0*x2^3/(x1^2*x3)", "--vars", "c,x0,x1,x2,x3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["plus"].as_array().unwrap().len(), 2);
    assert_eq!(v["minus"].as_array().unwrap().len(), 1);
    assert_eq!(v["minus"][0]["coeffs"]["x1"], 2);
}

#[test]
fn verify_perfect_and_derive() {
    let out = run(&["verify-perfect", "--level", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "verified");
    assert_eq!(run(&["verify-perfect", "--level", "9"]).status.code(), Some(2));

    let out = run(&["derive", "--index", "1", "--c", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    json(&out);
    assert_eq!(run(&["derive", "--index", "1", "--c", "2"]).status.code(), Some(2));
}

#[test]
fn classify_and_geom_eval() {
    let out = run(&["classify", "--point", "0,0,0,0,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "verified");
    let out = run(&["classify", "--point", "-1,2,-3,4,-5,6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(run(&["classify", "--point", "1,2"]).status.code(), Some(2));

    let out = run(&["geom-eval", "--point", "1,1,1,1,1,1", "--op", "e1", "--c", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["image"].as_array().unwrap().len(), 6);
    assert_eq!(run(&["geom-eval", "--point", "1,1,1,1,1,1", "--op", "e7", "--c", "2"]).status.code(), Some(2));
    assert_eq!(run(&["geom-eval", "--point", "1,1,1,1,1,0", "--op", "e0", "--c", "2"]).status.code(), Some(2));
}

#[test]
fn verma_needs_a_seed() {
    assert_eq!(run(&["verma", "--i", "2", "--j", "1"]).status.code(), Some(2));
    let a = run(&["verma", "--i", "2", "--j", "1", "--samples", "10", "--seed", "5"]);
    let b = run(&["verma", "--i", "2", "--j", "1", "--samples", "10", "--seed", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["variant_used"][0], "corrected");
}

#[test]
fn rep_check_verifies() {
    let out = run(&["rep-check"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["gradation"], "ok");
    assert_eq!(v["status"], "verified");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--level", "0"]).status.code(), Some(2));
    assert_eq!(run(&["tropicalize", "--expr", "x - y", "--vars", "x,y"]).status.code(), Some(2));
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("udcrystal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("b2.json");
    let out = run(&["enumerate", "--level", "2", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["count"], 35);
    std::fs::remove_dir_all(&dir).unwrap();
}
