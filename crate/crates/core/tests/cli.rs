use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use monocomp::{parse_rational, EdgeColoring, Rational};

const BIN: &str = env!("CARGO_BIN_EXE_monocomp");

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("MONOCOMP_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    let prefix = format!("{key}: ");
    text.lines()
        .find_map(|l| l.strip_prefix(prefix.as_str()))
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
}

fn without_timing(text: &str) -> String {
    text.lines().filter(|l| !l.starts_with("elapsed:")).collect::<Vec<_>>().join("\n")
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[test]
fn random_coloring_matches_golden_file() {
    let o = run(&["construct", "random", "--n", "5", "--r", "3", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), std::fs::read_to_string(data("random_5_3_42.col")).unwrap());
}

#[test]
fn seed_comes_from_environment() {
    let with_env = Command::new(BIN)
        .args(["construct", "random", "--n", "5", "--r", "3"])
        .env("MONOCOMP_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(stdout(&with_env), std::fs::read_to_string(data("random_5_3_42.col")).unwrap());
    let bad = Command::new(BIN)
        .args(["construct", "random", "--n", "5", "--r", "3"])
        .env("MONOCOMP_SEED", "forty-two")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn construct_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g9.col");
    let o = run(&["construct", "gyarfas", "--r", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(field(&text, "components"), "12");
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(field(&text, "output-sha256"), monocomp::report::sha256_hex(written.as_bytes()));
    assert_eq!(EdgeColoring::parse(&written).unwrap(), monocomp::gyarfas_coloring(4).unwrap());

    let o = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(field(&text, "components"), "12");
    assert_eq!(field(&text, "max-edges"), "3");
    assert_eq!(field(&text, "max-edge-fraction"), "1/12 (0.083333333333)");
}

#[test]
fn bound_sweep_is_tight_on_affine_k9() {
    let o = run(&["bound", data("affine_k9.col").to_str().unwrap(), "--sweep"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(field(&text, "best-z"), "1/12 (0.083333333333)");
    assert_eq!(field(&text, "best-gamma"), "4");
    assert_eq!(field(&text, "best-x"), "12");
    assert_eq!(field(&text, "tight"), "yes");
}

#[test]
fn bound_at_fixed_gamma_reports_certificate() {
    let o = run(&["bound", data("affine_k9.col").to_str().unwrap(), "--gamma", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(field(&text, "x*"), "6");
    assert_eq!(field(&text, "dual-objective"), "6");
    assert_eq!(field(&text, "certificate"), "verified");
}

#[test]
fn bound_csv_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("out.csv");
    let o = run(&["bound", data("affine_k9.col").to_str().unwrap(), "--gamma", "3", "--out", csv_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut reader = csv::Reader::from_path(&csv_path).unwrap();
    let headers = reader.headers().unwrap().clone();
    assert_eq!(&headers[1], "color");
    let weights: Vec<Rational> = reader
        .records()
        .map(|r| parse_rational(&r.unwrap()[2]).unwrap())
        .collect();
    assert_eq!(weights.len(), 12);
    assert_eq!(weights.iter().sum::<Rational>(), q(9, 1));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.col");
    std::fs::write(&path, "3 2\n0 1 0\n0 2 7\n1 2 0\n").unwrap();
    let o = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
    assert!(o.stdout.is_empty());
}

#[test]
fn missing_file_and_bad_flags_are_usage_errors() {
    assert_eq!(run(&["analyze", "/nonexistent/x.col"]).status.code(), Some(2));
    assert_eq!(run(&["search", "--n", "5"]).status.code(), Some(2));
    assert_eq!(run(&["bound", data("affine_k9.col").to_str().unwrap(), "--gamma", "x/y"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn report_body_is_deterministic() {
    let g9 = data("affine_k9.col");
    let args = ["bound", g9.to_str().unwrap()];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert!(a.contains("elapsed:"));
    assert_eq!(without_timing(&a), without_timing(&b));
    let args = ["search", "--n", "5", "--r", "2", "--jobs", "3"];
    let c = stdout(&run(&args));
    let d = stdout(&run(&["search", "--n", "5", "--r", "2", "--jobs", "1"]));
    assert_eq!(field(&c, "value"), field(&d, "value"));
    assert_eq!(field(&c, "witness-sha256"), field(&d, "witness-sha256"));
}

#[test]
fn classify_exit_codes() {
    let g9 = data("affine_k9.col");
    let g9 = g9.to_str().unwrap();
    let o = run(&["classify", g9, "--grid"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "grid"), "found");

    let o = run(&["classify", g9, "--disjoint-pair"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(field(&stdout(&o), "disjoint-pair"), "none");

    let o = run(&["classify", data("random_5_3_42.col").to_str().unwrap(), "--r3-case"]);
    assert_eq!(o.status.code(), Some(0));
    assert_ne!(field(&stdout(&o), "r3-case"), "unclassified");

    let o = run(&["classify", g9, "--r3-case"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn search_writes_witness_and_respects_budget() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.col");
    let o = run(&["search", "--n", "6", "--r", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "value"), "8");
    let witness = EdgeColoring::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(monocomp::decompose(&witness).max_edges(), 8);

    let o = run(&["search", "--n", "9", "--r", "4", "--budget-nodes", "1000"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_small_range_is_clean() {
    let o = run(&["verify", "--max-n", "4", "--max-r", "2", "--bipartite-max", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(field(&text, "scan-violations"), "0");
    assert_eq!(field(&text, "bipartite-failures"), "0");
}
