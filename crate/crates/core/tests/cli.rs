//! End-to-end checks of the `lumbral` binary: exit codes, determinism, and
//! the documented output shapes.

use std::process::{Command, Output};

fn lumbral(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lumbral"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

#[test]
fn table_latex_example() {
    let out = lumbral(&[
        "table", "--family", "poly-bernoulli", "-k", "2", "--n-max", "3", "--format", "latex",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "B_{0,\\lambda}^{(2)}(x) = 1");
}

#[test]
fn verify_pass_exits_zero() {
    let out = lumbral(&["verify", "--id", "eq7", "--n-max", "10"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_failure_exits_one() {
    let out = lumbral(&["verify", "--id", "eq35_variant_a", "--n-max", "3", "-k", "1..1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn eval_classical_derangement() {
    let out = lumbral(&[
        "eval", "--family", "derangement", "-r", "1", "-n", "4", "--lambda", "0", "--x", "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "9\n");
}

#[test]
fn usage_errors_exit_two_without_partial_output() {
    for args in [
        vec!["table", "--family", "poly-bernoulli", "--n-max", "2"],
        vec!["verify", "--id", "nope", "--n-max", "2"],
        vec!["eval", "--family", "derangement", "-r", "1", "-n", "2", "--lambda", "0.5"],
        vec!["verify"],
        vec!["nonsense"],
    ] {
        let out = lumbral(&args);
        assert_eq!(out.status.code(), Some(2), "args: {args:?}");
        assert!(out.stdout.is_empty(), "partial stdout for {args:?}");
        assert!(!out.stderr.is_empty(), "silent failure for {args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let out = lumbral(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verify"));
}

#[test]
fn byte_identical_across_runs() {
    let args = ["table", "--family", "bernoulli", "-r", "2", "--n-max", "5", "--format", "json"];
    let first = lumbral(&args);
    let second = lumbral(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.status.code(), Some(0));
}

#[test]
fn json_table_reparses() {
    let out = lumbral(&[
        "table", "--family", "poly-bernoulli", "-k", "1", "--n-max", "2", "--format", "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["family"], "poly-bernoulli");
    assert_eq!(value["k"], 1);
    // Degree-0 member is the constant 1.
    assert_eq!(value["rows"][0], serde_json::json!([["1"]]));
}

#[test]
fn csv_has_lf_line_endings_and_exact_cells() {
    let out = lumbral(&[
        "table", "--family", "derangement", "-r", "1", "--n-max", "3", "--lambda", "1/3", "--x",
        "0", "--format", "csv",
    ]);
    let text = stdout(&out);
    assert!(!text.contains('\r'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,value");
    // Every cell parses back as an exact rational.
    for line in &lines[1..] {
        let (_, value) = line.split_once(',').unwrap();
        value.parse::<lambda_umbral::exact::Rat>().expect("exact rational cell");
    }
}
