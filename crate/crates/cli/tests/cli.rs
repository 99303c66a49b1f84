use std::path::PathBuf;
use std::process::{Command, Output};

use sparse_galois_cli::{analyze, monodromy, render, Format, Options, Report, TupleDocument};

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/examples").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sparse-galois")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn mixed_volume_prints_the_value() {
    let o = run(&["mixed-volume", example("q_pair.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "8\n");
    let o = run(&["mixed-volume", example("simplex_pair.json").to_str().unwrap()]);
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn connectivity_prints_the_answer() {
    let o = run(&["connectivity", example("connectivity.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "true\n");
}

#[test]
fn input_errors_exit_with_two() {
    let o = run(&["analyze", example("reducible.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("reducible") && err.contains("A1"), "{err}");
    assert_eq!(err.lines().count(), 1);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"version":1,"n":2,"supports":[[[0,0]]"#).unwrap();
    assert_eq!(run(&["analyze", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["analyze", dir.path().join("missing.json").to_str().unwrap()]).status.code(), Some(2));

    let big = dir.path().join("big.json");
    std::fs::write(&big, r#"{"version":1,"n":1,"supports":[[[0],[30]]]}"#).unwrap();
    assert_eq!(run(&["monodromy", big.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn analyze_verdicts() {
    let o = run(&["analyze", "--format", "json", example("q_pair.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    let v = r.verdict.unwrap();
    assert_eq!(v.name, "StrictlySmaller");
    assert_eq!(v.witness.unwrap().p.to_i64(), Some(2));

    let o = run(&["analyze", example("trinomial_048.json").to_str().unwrap()]);
    let text = stdout(&o);
    assert!(text.contains("verdict: ExpectedWreath"), "{text}");
    assert!(text.contains("order 32"), "{text}");
}

#[test]
fn json_output_is_deterministic_and_round_trips() {
    let path = example("doubled_square.json");
    let args = ["monodromy", "--format", "json", "--seed", "3", path.to_str().unwrap()];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
    let r: Report = serde_json::from_str(&a).unwrap();
    assert_eq!(r.to_json() + "\n", a);
    assert_eq!(r.config.seed.to_i64(), Some(3));
}

#[test]
fn text_is_rendered_from_the_report() {
    let doc = TupleDocument::parse(&std::fs::read_to_string(example("trinomial_023.json")).unwrap()).unwrap();
    let opts = Options { seed: 1, ..Options::default() };
    let r = monodromy(&doc, &opts).unwrap();
    let round: Report = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(render(&round, Format::Text), render(&r, Format::Text));
    let m = r.monodromy.unwrap();
    assert_eq!(m.group_order.to_i64(), Some(6));
    assert!(m.solution_lattice.full);
    assert!(m.poisson.iter().all(|p| p.holds));
}

#[test]
fn labels_are_echoed() {
    let doc = TupleDocument::parse(r#"{"version":1,"n":1,"supports":[[[0],[2],[3]]],"labels":["f"]}"#).unwrap();
    let text = render(&analyze(&doc, &Options::default()).unwrap(), Format::Text);
    assert!(text.contains("  f = {(0), (2), (3)}"), "{text}");
}
