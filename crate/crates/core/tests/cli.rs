use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_congrel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data(file: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("examples/data");
    p.push(file);
    p.to_string_lossy().into_owned()
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON document per line"))
        .collect()
}

/// Exit status 1 exactly when some report carries a violation.
fn assert_exit_matches_violations(out: &Output) {
    let failed = json_lines(out).iter().any(|doc| {
        doc.get("violations")
            .and_then(Value::as_array)
            .is_some_and(|v| !v.is_empty())
            || doc.get("violation").is_some_and(|v| !v.is_null())
    });
    assert_eq!(out.status.code(), Some(if failed { 1 } else { 0 }));
}

#[test]
fn corpus_list() {
    let out = run(&["corpus", "list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for name in congrel::corpus::NAMES {
        assert!(text.contains(name), "{name}");
    }
    let out = run(&["corpus", "list", "--json"]);
    let names: Vec<String> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(names, congrel::corpus::NAMES);
}

#[test]
fn verify_wtip_exhaust_on_z4_is_reproducible() {
    let args = [
        "verify",
        "--theorem",
        "wtip",
        "--strategy",
        "exhaust",
        "builtin:z4",
        "--json",
        "--no-timing",
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let docs = json_lines(&first);
    assert_eq!(docs.len(), 1);
    assert_eq!(docs[0]["result"], "holds");
    assert_eq!(docs[0]["theorem"], "wtip");
    assert_eq!(docs[0]["elapsed_ms"], 0);
    assert_eq!(run(&args).stdout, first.stdout);
}

#[test]
fn verify_without_theorem_runs_all_four() {
    let out = run(&["verify", "builtin:z2", "--strategy", "exhaust", "--json"]);
    let theorems: Vec<Value> = json_lines(&out)
        .iter()
        .map(|d| d["theorem"].clone())
        .collect();
    assert_eq!(theorems, ["subrel", "subrelpiu", "wtip", "rr"]);
    assert_exit_matches_violations(&out);
}

#[test]
fn hypothesis_fails_on_pure_four_set() {
    let out = run(&["check-hypothesis", "builtin:pureset4", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let docs = json_lines(&out);
    assert_eq!(docs[0]["result"], "fails");
    assert!(!docs[0]["violations"].as_array().unwrap().is_empty());
    assert_exit_matches_violations(&out);

    let text = run(&["check-hypothesis", "builtin:pureset4"]);
    assert_eq!(text.status.code(), Some(1));
    assert!(!text.stdout.is_empty());
}

#[test]
fn modularity_holds_on_z2() {
    let out = run(&["check-modularity", "builtin:z2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_exit_matches_violations(&out);
}

#[test]
fn input_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["verify", "builtin:nope"],
        &["verify", "/nonexistent/algebra.json"],
        &["verify", "builtin:z2", "--strategy", "sideways"],
        &["verify", "builtin:z2", "--theorem", "fermat"],
        &[
            "witness",
            "builtin:z4",
            "--alpha",
            "full",
            "--abc",
            "0,1,2",
            "--R",
            "[[0,9]]",
            "--S",
            "full",
        ],
        &["eval", "forall a:Cong . a & b* <= a", "builtin:z2"],
        &["eval", "forall a:Cong . a &", "builtin:z2"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn parse_errors_carry_positions() {
    let out = run(&["eval", "forall a:Cong . a & b* <= a", "builtin:z2"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("1:21"), "{err}");
    assert!(err.contains('b'), "{err}");
}

#[test]
fn eval_on_algebra_file() {
    let rps = data("rps.json");
    let out = run(&["eval", "forall R:Refl . R <= R*", &rps, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["result"], "holds");

    let out = run(&[
        "eval",
        "forall R:Refl, S:Refl . R ; S = S ; R",
        "builtin:pureset3",
        "--strategy",
        "exhaust",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_exit_matches_violations(&out);
}

#[test]
fn witness_outcomes() {
    let chain = run(&[
        "witness",
        "builtin:z4",
        "--alpha",
        "full",
        "--abc",
        "0,1,2",
        "--R",
        "full",
        "--S",
        "full",
        "--json",
    ]);
    assert_eq!(chain.status.code(), Some(0));
    let doc = &json_lines(&chain)[0];
    assert_eq!(doc["result"], "chain");
    assert_eq!(doc["chain"][0], serde_json::json!([0, 0]));

    let cut = run(&[
        "witness",
        "builtin:pureset3",
        "--alpha",
        "cg:0,2",
        "--abc",
        "0,1,2",
        "--R",
        "full",
        "--S",
        "full",
        "--json",
    ]);
    assert_eq!(cut.status.code(), Some(1));
    assert_eq!(json_lines(&cut)[0]["result"], "disconnected");
}

#[test]
fn search_is_deterministic() {
    let args = [
        "search",
        "builtin:pureset4",
        "--budget",
        "300",
        "--seed",
        "9",
        "--json",
    ];
    let first = run(&args);
    assert_eq!(run(&args).stdout, first.stdout);
    assert_exit_matches_violations(&first);

    let quiet = run(&["search", "builtin:z2", "--budget", "100", "--json"]);
    assert_eq!(quiet.status.code(), Some(0));
    assert!(json_lines(&quiet)[0]["violation"].is_null());
}
