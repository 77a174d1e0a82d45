//! End-to-end runs of the binary.

use std::process::Command;

use mixed_eulerian::cli::{parse_args, CommandKind, Method, EXIT_USAGE};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mixed-eulerian"))
        .args(args)
        .env_remove("MIXED_EULERIAN_SEED")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn argv(s: &str) -> Vec<String> {
    std::iter::once("mixed-eulerian")
        .chain(s.split_whitespace())
        .map(String::from)
        .collect()
}

#[test]
fn parse_round_trips() {
    let q = parse_args(argv("compute E6 0,1,0,2,3,0")).unwrap();
    assert_eq!(q.command, CommandKind::Compute);
    assert_eq!(q.cartan[0].to_string(), "E6");
    assert_eq!(q.composition.unwrap().parts(), &[0, 1, 0, 2, 3, 0]);
    assert_eq!(q.method, Method::Reduce);
    assert_eq!(
        parse_args(argv("compute A3 (1,1,1)"))
            .unwrap()
            .composition
            .unwrap()
            .parts(),
        &[1, 1, 1]
    );
}

#[test]
fn compute_all_methods_on_golden_value() {
    let (code, out, _) = run(&["compute", "A8", "1,0,2,3,0,0,1,1", "--method", "all"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("23616"));
    let methods: Vec<&str> = lines.collect();
    assert_eq!(
        methods,
        [
            "  diagrams: 23616",
            "  divsym: 23616",
            "  quotient: 23616",
            "  reduce: 23616",
            "  weylsum: 23616"
        ]
    );
}

#[test]
fn json_schema_and_determinism() {
    let args = [
        "compute",
        "E6",
        "0,1,0,2,3,0",
        "--method",
        "all",
        "--format",
        "json",
        "--seed",
        "7",
    ];
    let (code, first, _) = run(&args);
    let (_, second, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(first, second);
    let v: Value = serde_json::from_str(&first).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        ["composition", "integer", "methods", "rank", "type", "value"]
    );
    assert_eq!(v["type"], "E6");
    assert_eq!(v["rank"], 6);
    assert_eq!(v["value"], "34992");
    assert_eq!(v["integer"], true);
    assert_eq!(v["composition"], serde_json::json!([0, 1, 0, 2, 3, 0]));
    let methods = v["methods"].as_object().unwrap();
    assert_eq!(methods.len(), 3);
    assert!(methods.values().all(|m| m == "34992"));
    assert!(first.find("\"type\"").unwrap() < first.find("\"rank\"").unwrap());
}

#[test]
fn table_rows_in_order() {
    let (code, out, _) = run(&["table", "G2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "2,0\t6\n1,1\t12\n0,2\t18\n");
    let (code, out, _) = run(&["table", "A3", "--format", "json"]);
    assert_eq!(code, 0);
    let rows: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 10);
}

#[test]
fn usage_errors() {
    for args in [
        vec!["diagrams", "B3", "1,1,1"],
        vec!["compute", "E6", "1,1"],
        vec!["compute", "X3", "1,1,1"],
        vec!["compute", "A2", "1,2"],
        vec!["compute", "B3", "1,1,1", "--method", "divsym"],
        vec!["frobnicate"],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty());
    }
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn weylsum_over_cap_is_a_runtime_error() {
    let (code, _, err) = run(&["compute", "E8", "1,1,1,1,1,1,1,1", "--method", "weylsum"]);
    assert_eq!(code, 1);
    assert!(err.contains("cap"), "{err}");
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_mixed-eulerian"))
        .args(["compute", "A4", "1,1,1,1", "--method", "divsym"])
        .env("MIXED_EULERIAN_SEED", "12345")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "24\n");
    let bad = Command::new(env!("CARGO_BIN_EXE_mixed-eulerian"))
        .args(["compute", "A4", "1,1,1,1"])
        .env("MIXED_EULERIAN_SEED", "abc")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}

#[test]
fn diagrams_render() {
    let (code, out, _) = run(&["diagrams", "A8", "1,0,2,3,0,0,1,1"]);
    assert_eq!(code, 0);
    assert!(out.contains("P1") && out.contains("P3"));
    assert!(out.contains("14336 + 4480 + 4800 = 23616"), "{out}");
    let (code, out, _) = run(&["diagrams", "A8", "1,0,2,3,0,0,1,1", "--render", "svg"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("<svg").count(), 3);
}

#[test]
fn volume_and_mtable_and_verify() {
    let (code, out, _) = run(&["volume", "2,1,0", "--method", "all"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("3"));
    let (code, out, _) = run(&["volume", "1/2,0,-1/3"]);
    assert_eq!(code, 0);
    assert!(!out.trim().is_empty());

    let (code, out, _) = run(&["mtable", "A3", "--derive", "--format", "json"]);
    assert_eq!(code, 0);
    let rows: Value = serde_json::from_str(&out).unwrap();
    assert!(rows
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["value"] == r["derived"]));

    let (code, out, _) = run(&["verify", "B4", "G2"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 2);
}

#[test]
fn out_file() {
    let path = std::env::temp_dir().join(format!("mixed-eulerian-{}.txt", std::process::id()));
    let (code, out, _) = run(&["compute", "G2", "1,1", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "12\n");
    let _ = std::fs::remove_file(path);
}
