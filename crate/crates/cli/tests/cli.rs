use std::path::PathBuf;
use std::process::{Command, Output};

use sober_cli::{analyze, AnalysisReport, AnalyzeOptions};
use sober_core::symbolic::RingDescriptor;
use sober_core::verdict::Verdict;
use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, json: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, json).unwrap();
    path
}

fn sober(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sober")).args(args).output().unwrap()
}

fn run_on(json: &str, args: &[&str]) -> Output {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "ring.json", json);
    let mut full: Vec<&str> = args.to_vec();
    full.insert(1, path.to_str().unwrap());
    sober(&full)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_zmod12() {
    let out = run_on(r#"{"type":"Zmod","n":12}"#, &["analyze", "--no-timings"]);
    assert_eq!(out.status.code(), Some(0));
    let report: AnalysisReport = serde_json::from_slice(&out.stdout).unwrap();
    let inv = report.invariants.unwrap();
    assert_eq!(inv.krull_dim.to_string(), "0");
    assert_eq!(inv.spec.len(), 2);
    assert_eq!(inv.jacobson_radical.members, [0, 6]);
    assert_eq!(report.verdict.verdict, Verdict::Sober);
    assert!(report.verdict.brute_force.unwrap().vacuous);
    assert!(report.timings.is_none());
}

#[test]
fn analyze_integers_attaches_certificate() {
    let out = run_on(r#"{"type":"Z"}"#, &["analyze"]);
    assert_eq!(out.status.code(), Some(0));
    let report: AnalysisReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.verdict.verdict, Verdict::NotSober);
    assert!(report
        .verdict
        .trace
        .iter()
        .any(|t| t.statement.contains("principal ideal domain that is not a field")));
    assert_eq!(report.verdict.certificate.unwrap().samples.len(), 10);
    assert!(report.timings.is_some());
}

#[test]
fn report_round_trips() {
    for d in [
        RingDescriptor::Zmod { n: 12 },
        RingDescriptor::Z,
        RingDescriptor::PolyRing { q: 4 },
        RingDescriptor::Product {
            factors: vec![RingDescriptor::Z, RingDescriptor::Zmod { n: 2 }],
        },
    ] {
        let opts = AnalyzeOptions {
            timings: false,
            dot: true,
            ..AnalyzeOptions::default()
        };
        let report = analyze(&d, opts).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let back: AnalysisReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}

#[test]
fn parse_errors_exit_2_and_name_the_field() {
    let out = run_on(r#"{"type":"Zmod","m":12}"#, &["analyze"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`m`"));
    let out = run_on(r#"{"type":"PolyRing"}"#, &["sober"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`q`"));
    let out = run_on("{not json", &["analyze"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run_on(r#"{"type":"PolyRing","q":6}"#, &["sober"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_exceeded_exits_3() {
    let out = run_on(r#"{"type":"Zmod","n":1000}"#, &["analyze"]);
    assert_eq!(out.status.code(), Some(3));
    let out = sober(&["verify", "--max-order", "100000"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn sober_lines() {
    let out = run_on(r#"{"type":"PolyRing","q":2}"#, &["sober", "--samples", "3"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "NotSober (rule: pid with zero jacobson radical)");
    assert_eq!(lines.iter().filter(|l| l.contains(" not in (")).count(), 3);
    assert!(lines[2].starts_with("  x^2+x not in (x^2+x+1)"));

    let out = run_on(r#"{"type":"ZLocalized","primes":[2,3,7]}"#, &["sober"]);
    assert_eq!(stdout(&out), "Sober (rule: semilocal dim 1)\n");
    let out = run_on(r#"{"type":"DVR","label":"t-adic"}"#, &["sober"]);
    assert!(stdout(&out).starts_with("Sober"));
}

#[test]
fn spec_listings_and_dot() {
    let dir = TempDir::new().unwrap();
    let ring = write(&dir, "z12.json", r#"{"type":"Zmod","n":12}"#);
    let dot = dir.path().join("spec.dot");
    let out = sober(&["spec", ring.to_str().unwrap(), "--dot", dot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "(3) maximal = {0, 3, 6, 9}\n(2) maximal = {0, 2, 4, 6, 8, 10}\n");
    let dot = std::fs::read_to_string(dot).unwrap();
    assert!(dot.starts_with("digraph spec {"));
    assert!(dot.contains("label=\"(2)\""));

    let out = run_on(r#"{"type":"PolyQuotient","p":5,"modulus":[2,0,1]}"#, &["spec"]);
    assert_eq!(stdout(&out), "(0) maximal = {0}\n");

    let out = run_on(r#"{"type":"Z"}"#, &["spec", "--limit", "5"]);
    assert_eq!(stdout(&out), "(0)\n(2) maximal\n(3) maximal\n(5) maximal\n(7) maximal\n(11) maximal\n");
}

#[test]
fn verify_self_test_fails() {
    let out = sober(&["verify", "--max-order", "16", "--plant-defects", "--no-timings"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["passed"], false);

    let out = sober(&["verify", "--max-order", "16", "--no-timings"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn analyze_is_deterministic_without_timings() {
    let args = ["analyze", "--no-timings", "--dot"];
    let a = run_on(r#"{"type":"Product","factors":[{"type":"Zmod","n":4},{"type":"Zmod","n":9}]}"#, &args);
    let b = run_on(r#"{"type":"Product","factors":[{"type":"Zmod","n":4},{"type":"Zmod","n":9}]}"#, &args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
