use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use orlicz_approx::spectrum::read_jsonl;
use orlicz_approx::CoeffSeq;

const BIN: &str = env!("CARGO_BIN_EXE_orlicz-approx");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn norm_of_three_four_is_five() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.jsonl", "{\"k\":1,\"re\":3,\"im\":0}\n{\"k\":-2,\"re\":0,\"im\":4}\n");
    let out = run(&["norm", "--orlicz", r#"{"family":"power","p":2}"#, "--input", &f]);
    assert_eq!(out.status.code(), Some(0));
    assert!((json(&out)["value"].as_f64().unwrap() - 5.0).abs() < 1e-10);
}

#[test]
fn en_matches_tail_formula() {
    let dir = tempfile::tempdir().unwrap();
    let body: String = (-3..=3).map(|k| format!("{{\"k\":{k},\"re\":1,\"im\":0}}\n")).collect();
    let f = write(dir.path(), "ones.jsonl", &body);
    let out = run(&["en", "--n", "2", "--orlicz", r#"{"family":"power","p":2}"#, "--input", &f]);
    assert_eq!(out.status.code(), Some(0));
    assert!((json(&out)["value"].as_f64().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn kernel_output_round_trips_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    for path in [&a, &b] {
        let out = run(&["kernel", "--n", "40", "--r", "3", "--output", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let bytes = fs::read(&a).unwrap();
    assert_eq!(bytes, fs::read(&b).unwrap());
    let kernel: CoeffSeq<f64> = read_jsonl(bytes.as_slice()).unwrap();
    let direct = orlicz_approx::approx::jackson_kernel::<f64>(40, 3).unwrap().coeffs;
    assert_eq!(kernel, direct);

    // feeding the kernel back through sigma keeps the file format intact
    let out = run(&["sigma", "--input", a.to_str().unwrap(), "--alpha", "2", "--n", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let sigma: CoeffSeq<f64> = read_jsonl(out.stdout.as_slice()).unwrap();
    assert!(sigma.max_frequency() < 30);
}

#[test]
fn scalar_commands_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.jsonl", "{\"k\":1,\"re\":0.3,\"im\":-0.1}\n{\"k\":5,\"re\":0.25,\"im\":0}\n{\"k\":-9,\"re\":0.125,\"im\":0.5}\n");
    let cases: Vec<Vec<&str>> = vec![
        vec!["onorm", "--orlicz", r#"{"family":"exp_minus_one"}"#, "--input", &f],
        vec!["omega", "--alpha", "1.5", "--delta", "0.7", "--input", &f],
        vec!["kfunc", "--alpha", "2", "--delta", "0.1", "--input", &f, "--format", "csv"],
        vec!["verify", "equiv", "--alpha", "1", "--family", "lacunary", "--seed", "3", "--per-family", "1", "--band", "64"],
    ];
    for args in cases {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.status.code(), second.status.code(), "{args:?}");
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert!(!first.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_direct_contract() {
    let out = run(&["verify", "direct", "--alpha", "1", "--family", "random-band", "--seed", "7", "--n-max", "64"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out);
    for key in ["name", "params", "tolerance", "samples", "empirical_constant", "passed"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn failed_report_exits_one() {
    // δ^3 fails (B_α) for α = 2
    let out = run(&["verify", "balpha", "--alpha", "2", "--r", "3", "--n-max", "256"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], serde_json::Value::Bool(false));
}

#[test]
fn input_and_usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.jsonl", "{\"k\":1,\"re\":1,\"im\":0}\n\n{\"k\":2,\"re\":oops}\n");
    let out = run(&["norm", "--input", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let f = write(dir.path(), "f.jsonl", "{\"k\":1,\"re\":1,\"im\":0}\n");
    let out = run(&["norm", "--orlicz", r#"{"family":"power","p":2,"q":1}"#, "--input", &f]);
    assert_eq!(out.status.code(), Some(2));

    assert_eq!(run(&["norm"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["omega", "--input", &f, "--alpha", "1", "--delta", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
