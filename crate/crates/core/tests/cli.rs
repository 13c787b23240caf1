use std::process::{Command, Output};

use gwords::numeric::refute::{Counterexample, CounterexampleJson};
use serde_json::Value;

fn gw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gw"))
        .args(args)
        .env_remove("GW_THREADS")
        .output()
        .expect("spawn gw")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn help_exits_zero() {
    assert_eq!(gw(&["--help"]).status.code(), Some(0));
    assert_eq!(gw(&["classify", "--help"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(gw(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(gw(&["classify"]).status.code(), Some(1));
    let bad_word = gw(&["classify", "A^x B"]);
    assert_eq!(bad_word.status.code(), Some(1));
    assert!(!bad_word.stderr.is_empty());
    assert_eq!(gw(&["sweep", "--class", "2", "--exponents", "1,q"]).status.code(), Some(1));
    assert_eq!(gw(&["trace", "A B^-1", "--mode", "positive"]).status.code(), Some(1));
}

#[test]
fn bad_thread_count_is_rejected() {
    let out = Command::new(env!("CARGO_BIN_EXE_gw"))
        .args(["classify", "A B"])
        .env("GW_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn classify_reports_theorem_verdicts() {
    let out = gw(&["classify", "A B A^2 B^2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "bad_theorem");
    assert_eq!(v["reason"], "class2");
    assert_eq!(v["class_number"], 2);

    let v = json(&gw(&["classify", "A^2 B A^2 B^3", "--json"]));
    assert_eq!(v["verdict"], "good_nearly_symmetric");
    assert!(v["certificates"]["near_symmetry"].is_object());

    let text = stdout(&gw(&["classify", "A B^2 A^2 B^2 A^3 B^4"]));
    assert!(text.contains("inexact_positive"), "{text}");
}

#[test]
fn classify_json_is_deterministic() {
    let args = ["classify", "A B^2 A B^3 A^4 B^5", "--refute", "--seed", "7", "--json"];
    let first = gw(&args);
    let second = Command::new(env!("CARGO_BIN_EXE_gw"))
        .args(args)
        .env("GW_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn counterexample_round_trips_and_revalidates() {
    let v = json(&gw(&["classify", "A B^2 A B^3 A^4 B^5", "--refute", "--json"]));
    assert_eq!(v["verdict"], "bad_refuted");
    let dto: CounterexampleJson = serde_json::from_value(v["certificates"]["counterexample"].clone()).unwrap();
    let c = Counterexample::from_json(&dto).unwrap();
    c.revalidate().unwrap();
}

#[test]
fn sweep_csv_has_header_and_one_row_per_orbit() {
    let out = gw(&["sweep", "--class", "2", "--exponents", "-2..2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "word,class,verdict,reason,nearly_symmetric,exact,n_min_indices,count_odd,count_even,nontrivial_relations,witness_found,seed"
    );
    assert_eq!(lines.count(), 55);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("good_nearly_symmetric: 34"), "{stderr}");
}

#[test]
fn sweep_json_matches_between_runs() {
    let args = ["sweep", "--class", "2", "--exponents", "1,2,3", "--format", "json"];
    let a = gw(&args);
    let b = gw(&args);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert!(v["rows"].as_array().unwrap().len() > 1);
}

#[test]
fn conjecture_on_empty_set_succeeds() {
    let out = gw(&["conjecture", "--class", "2", "--exponents", "", "--budget", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["words"], 0);
    assert_eq!(v["survivors"].as_array().unwrap().len(), 0);
}

#[test]
fn trace_prints_expansion_with_provenance() {
    let out = gw(&["trace", "A B", "--mode", "general", "--paper-u"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["mode"], "general");
    assert!(!v["provenance"].as_array().unwrap().is_empty());

    let seeded = gw(&["trace", "A B A^2 B^2", "--mode", "positive", "--seed", "3", "--imag"]);
    assert_eq!(seeded.status.code(), Some(0));
    assert_eq!(seeded.stdout, gw(&["trace", "A B A^2 B^2", "--mode", "positive", "--seed", "3", "--imag"]).stdout);
}
