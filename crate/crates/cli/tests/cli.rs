use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const FIG1A: &str = "x1, x1 & !x2 | x1 & x3\nx2, x1 & !x3\nx3, x2\n";

struct Fixture {
    _dir: tempfile::TempDir,
    path: PathBuf,
}

fn fixture(text: &str) -> Fixture {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("net.bnet");
    std::fs::write(&path, text).unwrap();
    Fixture { _dir: dir, path }
}

fn bnkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bnkit")).args(args).output().unwrap()
}

fn on(f: &Fixture, args: &[&str]) -> Output {
    let mut all = vec![args[0], f.path.to_str().unwrap()];
    all.extend(&args[1..]);
    bnkit(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn async_attractors_as_json() {
    let f = fixture(FIG1A);
    let out = on(&f, &["attractors", "--mode", "async", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "attractors");
    assert_eq!(v["attractors"], serde_json::json!([["000"]]));
}

#[test]
fn reduce_prints_rules() {
    let f = fixture(FIG1A);
    let out = on(&f, &["reduce", "--eliminate", "x3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "x1, x1\nx2, x1 & !x2\n");
    let by_position = on(&f, &["reduce", "--eliminate", "3"]);
    assert_eq!(stdout(&by_position), stdout(&out));
}

#[test]
fn reduce_reports_mediator_and_preservation() {
    let f = fixture(FIG1A);
    let v = json(&on(
        &f,
        &[
            "reduce",
            "--eliminate",
            "x3",
            "--check-mediator",
            "--check-mts",
            "--format",
            "json",
        ],
    ));
    assert_eq!(v["mediator"], false);
    assert_eq!(v["mts"]["preserved"], false);
    let plain = json(&on(&f, &["reduce", "--eliminate", "x3", "--format", "json"]));
    assert_eq!(plain["linear"], false);
    assert!(plain.get("mts").is_none());
    assert_eq!(stdout(&on(&f, &["reduce", "--eliminate", "x3"])).lines().count(), 2);
}

#[test]
fn autoregulated_component_is_refused() {
    let f = fixture(FIG1A);
    let out = on(&f, &["reduce", "--eliminate", "x1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("autoregulated"));
}

#[test]
fn strategy_verdict_sets_exit_status() {
    let f = fixture(FIG1A);
    let vp = on(
        &f,
        &[
            "control",
            "--phenotype",
            "0**",
            "--criterion",
            "vp",
            "--strategy",
            "***",
        ],
    );
    assert_eq!(vp.status.code(), Some(1));
    let ad = on(
        &f,
        &[
            "control",
            "--phenotype",
            "0**",
            "--criterion",
            "ad",
            "--strategy",
            "***",
        ],
    );
    assert_eq!(ad.status.code(), Some(0));
    let fixed = on(
        &f,
        &[
            "control",
            "--phenotype",
            "0**",
            "--criterion",
            "vp",
            "--strategy",
            "*10",
            "--format",
            "json",
        ],
    );
    assert_eq!(json(&fixed)["verdict"]["holds"], true);
}

#[test]
fn control_search_lists_strategies() {
    let f = fixture(FIG1A);
    let v = json(&on(
        &f,
        &[
            "control",
            "--phenotype",
            "0**",
            "--criterion",
            "vp",
            "--minimal",
            "--format",
            "json",
        ],
    ));
    // Only x2 = 1, x3 = 0 turns the first rule into the constant 0.
    assert_eq!(v["strategies"], serde_json::json!(["*10"]));
    let capped = json(&on(
        &f,
        &[
            "control",
            "--phenotype",
            "0**",
            "--criterion",
            "vp",
            "--max-fixed",
            "0",
            "--format",
            "json",
        ],
    ));
    assert_eq!(capped["strategies"], serde_json::json!([]));
}

#[test]
fn trap_spaces_and_percolation() {
    let f = fixture(FIG1A);
    assert_eq!(stdout(&on(&f, &["trapspaces"])), "***\n0**\n00*\n000\n");
    assert_eq!(stdout(&on(&f, &["trapspaces", "--minimal"])), "000\n");
    let v = json(&on(&f, &["percolate", "--format", "json"]));
    assert_eq!(v["fixpoint"], "***");
    let seeded = json(&on(&f, &["percolate", "--seed-space", "0**", "--format", "json"]));
    assert_eq!(seeded["fixpoint"], "000");
}

#[test]
fn info_describes_graph() {
    let f = fixture(FIG1A);
    let v = json(&on(&f, &["info", "--format", "json"]));
    assert_eq!(v["arity"], 3);
    assert_eq!(v["components"][0]["autoregulated"], true);
    assert_eq!(v["components"][2]["regulators"], serde_json::json!(["x2"]));
    assert_eq!(v["edges"].as_array().unwrap().len(), 6);
}

#[test]
fn reads_standard_input() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_bnkit"))
        .args(["trapspaces", "-", "--minimal"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(FIG1A.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(stdout(&out), "000\n");
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let f = fixture(FIG1A);
    assert_eq!(on(&f, &["attractors", "--mode", "sideways"]).status.code(), Some(2));
    assert_eq!(
        on(&f, &["control", "--phenotype", "0*", "--criterion", "vp"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(bnkit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bnkit(&["info", "/nonexistent/net.bnet"]).status.code(), Some(2));
    let bad = fixture("x1, x1 &\n");
    assert_eq!(on(&bad, &["info"]).status.code(), Some(2));
    let undeclared = fixture("x1, y\n");
    assert_eq!(on(&undeclared, &["info"]).status.code(), Some(2));
}

#[test]
fn capacity_errors_exit_three() {
    let f = fixture(FIG1A);
    let out = on(&f, &["attractors", "--max-states", "4"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(on(&f, &["attractors", "--max-states", "8"]).status.code(), Some(0));
    assert_eq!(
        bnkit(&["search", "--property", "thm-min-ts", "--arity", "30"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn verify_paper_passes() {
    let out = bnkit(&["verify-paper"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS ex:no-CS-to-CS-not-fixed"));
    let v = json(&bnkit(&["verify-paper", "--format", "json"]));
    assert_eq!(v["passed"], true);
}

#[test]
fn search_reports_witness() {
    let args = [
        "search",
        "--property",
        "SD-backward-general-fixed",
        "--arity",
        "4",
        "--samples",
        "300",
        "--seed",
        "9",
        "--format",
        "json",
    ];
    let out = bnkit(&args);
    assert_eq!(out.status.code(), Some(0));
    let w = &json(&out)["witness"];
    assert_eq!(w["property"], "SD-backward-general-fixed");
    assert!(w["network"].as_str().unwrap().contains(','));
    let none = json(&bnkit(&[
        "search",
        "--property",
        "thm-min-ts",
        "--arity",
        "4",
        "--samples",
        "50",
        "--format",
        "json",
    ]));
    assert!(none["witness"].is_null());
    assert_eq!(bnkit(&["search", "--property", "nonsense"]).status.code(), Some(2));
}
