//! End-to-end runs of the `septic` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn septic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_septic"))
        .args(args)
        .env_remove("SEPTIC_THREADS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn envelope(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

#[test]
fn special_primes_exit_2() {
    for p in ["2", "3", "7", "9"] {
        assert_eq!(
            code(&septic(&["search", "--prime", p, "--sample", "5"])),
            2,
            "p = {p}"
        );
        assert_eq!(
            code(&septic(&[
                "verify", "--mod-p", "--prime", p, "--alpha", "1"
            ])),
            2,
            "p = {p}"
        );
    }
}

#[test]
fn non_root_exits_4() {
    let o = septic(&["verify", "--mod-p", "--prime", "11", "--alpha", "2"]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a root"));
}

#[test]
fn verify_f11_passes_with_envelope() {
    let o = septic(&[
        "verify", "--mod-p", "--prime", "11", "--alpha", "-3", "--json",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = envelope(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["minpoly"], "7*alpha^3+7*alpha+1");
    assert_eq!(v["command"], "verify");
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["result"]["report"]["lifted_total"], 99);
    assert_eq!(v["result"]["report"]["all_nodes"], true);
}

#[test]
fn tight_budget_exits_3() {
    let o = septic(&[
        "verify", "--mod-p", "--prime", "11", "--alpha", "-3", "--budget", "1",
    ]);
    assert_eq!(code(&o), 3);
}

#[test]
fn missing_mode_is_a_usage_error() {
    assert_ne!(code(&septic(&["verify", "--prime", "11"])), 0);
    assert_ne!(
        code(&septic(&[
            "search",
            "--prime",
            "11",
            "--exhaustive",
            "--sample",
            "3"
        ])),
        0
    );
}

#[test]
fn sample_is_reproducible_across_threads() {
    let a = septic(&[
        "search",
        "--prime",
        "11",
        "--sample",
        "300",
        "--seed",
        "7",
        "--threads",
        "1",
        "--json",
    ]);
    let b = septic(&[
        "search",
        "--prime",
        "11",
        "--sample",
        "300",
        "--seed",
        "7",
        "--threads",
        "3",
        "--json",
    ]);
    assert_eq!(code(&a), 0);
    assert_eq!(envelope(&a)["result"], envelope(&b)["result"]);
    assert_eq!(envelope(&a)["result"]["tuples"], 300);
}

#[test]
fn search_writes_outputs_and_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let out_s = out.to_str().unwrap();
    let first = septic(&[
        "search", "--prime", "13", "--sample", "200", "--seed", "3", "--out", out_s, "--json",
    ]);
    assert_eq!(code(&first), 0);
    for f in ["report.json", "hits.tsv", "checkpoint.json"] {
        assert!(out.join(f).exists(), "{f}");
    }
    let saved: Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(saved["result"], envelope(&first)["result"]);

    let cp = out.join("checkpoint.json");
    let resumed = septic(&[
        "search",
        "--prime",
        "13",
        "--sample",
        "200",
        "--seed",
        "3",
        "--resume",
        cp.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(code(&resumed), 0);
    assert_eq!(envelope(&resumed)["result"], envelope(&first)["result"]);

    let other = septic(&[
        "search",
        "--prime",
        "13",
        "--sample",
        "200",
        "--seed",
        "4",
        "--resume",
        cp.to_str().unwrap(),
    ]);
    assert_ne!(code(&other), 0);
}

#[test]
fn alpha_real_brackets_the_root() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("alpha.json");
    let o = septic(&[
        "alpha-real",
        "--tol",
        "1e-8",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("real roots of 7*alpha^3+7*alpha+1: 1"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["result"]["real_roots"], 1);
    assert_eq!(code(&septic(&["alpha-real", "--tol=-1"])), 1);
}

#[test]
fn f5_search_is_flagged() {
    let o = septic(&["search", "--prime", "5", "--sample", "20"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("special prime"));
}

#[test]
fn f13_has_bad_reduction() {
    let o = septic(&[
        "verify", "--mod-p", "--prime", "13", "--alpha", "-1", "--json",
    ]);
    assert_eq!(code(&o), 1);
    let report = &envelope(&o)["result"]["report"];
    assert_eq!(report["plane_nodes"], 16);
    assert_eq!(report["nodality"], "failed");
}
