use super::*;

fn run(args: &[&str]) -> Result<CliOutcome, CliError> {
    let mut argv = vec!["lumbral"];
    argv.extend_from_slice(args);
    execute(argv)
}

fn stdout_of(args: &[&str]) -> String {
    let outcome = run(args).expect("command should succeed");
    assert_eq!(outcome.exit_code, 0, "unexpected exit code");
    outcome.stdout
}

#[test]
fn table_latex_poly_bernoulli() {
    let out = stdout_of(&[
        "table", "--family", "poly-bernoulli", "-k", "2", "--n-max", "3", "--format", "latex",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "B_{0,\\lambda}^{(2)}(x) = 1");
    assert!(lines[1].starts_with("B_{1,\\lambda}^{(2)}(x) = x"));
    assert!(lines[3].starts_with("B_{3,\\lambda}^{(2)}(x) = x^{3}"));
}

#[test]
fn table_text_uses_family_symbols() {
    let out = stdout_of(&["table", "--family", "derangement", "-r", "1", "--n-max", "2"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "d_(0;r=1)(x) = 1");
    assert_eq!(lines[1], "d_(1;r=1)(x) = x");
}

#[test]
fn table_csv_numeric_mode_is_exact() {
    let out = stdout_of(&[
        "table", "--family", "bernoulli", "-r", "1", "--n-max", "4", "--lambda", "0", "--x", "0",
        "--format", "csv",
    ]);
    assert_eq!(out, "n,value\n0,1\n1,-1/2\n2,1/6\n3,0\n4,-1/30\n");
}

#[test]
fn table_csv_requires_both_evaluation_points() {
    let err = run(&[
        "table", "--family", "bernoulli", "-r", "1", "--n-max", "2", "--lambda", "0", "--format",
        "csv",
    ]);
    assert!(matches!(err, Err(CliError::Usage(_))));
}

#[test]
fn table_json_round_trips_byte_identically() {
    for args in [
        vec!["table", "--family", "poly-bernoulli", "-k", "-2", "--n-max", "4", "--format", "json"],
        vec!["table", "--family", "bernoulli", "-r", "2", "--n-max", "3", "--format", "json"],
        vec![
            "table", "--family", "derangement", "-r", "1", "--n-max", "3", "--lambda", "1/2",
            "--x", "-2/3", "--format", "json",
        ],
    ] {
        let out = stdout_of(&args);
        let parsed: FamilyTableDoc = serde_json::from_str(&out).expect("parseable");
        let rendered = to_json(&parsed).unwrap();
        assert_eq!(rendered, out, "args: {args:?}");
    }
}

#[test]
fn stirling_table_formats() {
    let csv = stdout_of(&["table", "--family", "stirling2", "--n-max", "3", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,0,1,2,3");
    assert_eq!(lines[1], "0,1,0,0,0");
    // Row 3: S_{2,λ}(3,1) = (1−λ)(1−2λ) expanded, S_{2,λ}(3,2) = 3 − 3λ.
    assert_eq!(lines[4], "3,0,1 - 3*λ + 2*λ^2,3 - 3*λ,1");

    let json = stdout_of(&["table", "--family", "stirling1", "--n-max", "2", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["kind"], "first");
    assert_eq!(value["rows"][2][1], serde_json::json!(["-1", "1"]));

    // Evaluated at λ=0 the triangle is the classical one.
    let csv = stdout_of(&[
        "table", "--family", "stirling2", "--n-max", "3", "--lambda", "0", "--format", "csv",
    ]);
    assert!(csv.lines().nth(4).unwrap().starts_with("3,0,1,3,1"));

    let err = run(&["table", "--family", "stirling2", "--n-max", "2", "--format", "latex"]);
    assert!(matches!(err, Err(CliError::Usage(_))));
}

#[test]
fn eval_matches_the_classical_derangement_number() {
    let out = stdout_of(&[
        "eval", "--family", "derangement", "-r", "1", "-n", "4", "--lambda", "0", "--x", "0",
    ]);
    assert_eq!(out, "9\n");
}

#[test]
fn eval_accepts_negative_rationals() {
    let out = stdout_of(&[
        "eval", "--family", "poly-bernoulli", "-k", "-1", "-n", "1", "--lambda", "-1/2", "--x",
        "1/3",
    ]);
    // B_{1,λ}^{(-1)}(x) = x + (1−λ)(2−1) = x + 1 − λ at λ=−1/2, x=1/3.
    assert_eq!(out, "11/6\n");
}

#[test]
fn verify_single_identity_passes() {
    let outcome = run(&["verify", "--id", "eq7", "--n-max", "10"]).unwrap();
    assert_eq!(outcome.exit_code, 0);
    assert!(outcome.stdout.contains("eq7"));
    assert!(outcome.stdout.contains("PASS"));
}

#[test]
fn verify_failing_variant_exits_one_with_witness() {
    let outcome = run(&[
        "verify", "--id", "eq35_variant_a", "--n-max", "4", "-k", "1..2",
    ])
    .unwrap();
    assert_eq!(outcome.exit_code, 1);
    assert!(outcome.stdout.contains("FAIL"));
    assert!(outcome.stdout.contains("first failing point"));
    assert!(outcome.stdout.contains("n=2"), "smallest failing n is 2:\n{}", outcome.stdout);
}

#[test]
fn verify_all_reports_adjudication() {
    let outcome = run(&[
        "verify", "--id", "all", "--n-max", "3", "-k", "1..2", "-r", "1..2", "-s", "1..2",
        "--samples", "5",
    ])
    .unwrap();
    assert_eq!(outcome.exit_code, 0, "stdout:\n{}", outcome.stdout);
    assert!(outcome
        .stdout
        .contains("eq35 adjudication: eq35_variant_b is the exact identity"));
    assert!(outcome.stdout.ends_with("aggregate: PASS\n"));
}

#[test]
fn verify_json_is_structured() {
    let outcome = run(&[
        "verify", "--id", "stirling_inversion", "--n-max", "6", "--format", "json",
    ])
    .unwrap();
    let value: serde_json::Value = serde_json::from_str(&outcome.stdout).unwrap();
    assert_eq!(value["identity"], "stirling_inversion");
    assert_eq!(value["status"], "pass");
}

#[test]
fn verify_rejects_unknown_identity() {
    let err = run(&["verify", "--id", "thm99", "--n-max", "3"]);
    match err {
        Err(CliError::Usage(msg)) => assert!(msg.contains("unknown identity")),
        other => panic!("expected usage error, got {other:?}"),
    }
}

#[test]
fn basis_row_between_families() {
    // B^{(1)} and β coincide, so the row is a unit vector.
    let out = stdout_of(&[
        "basis", "--from", "poly-bernoulli:k=1", "--to", "bernoulli:r=1", "-n", "1",
    ]);
    assert_eq!(out, "C[1,0] = 0\nC[1,1] = 1\n");

    // Expanding (x)_{n,λ} in the plain-basis direction reproduces S_{2,λ}.
    let out = stdout_of(&["basis", "--from", "falling", "--to", "bernoulli:r=1", "-n", "0"]);
    assert_eq!(out, "C[0,0] = 1\n");
}

#[test]
fn basis_json_lists_coefficients() {
    let out = stdout_of(&[
        "basis", "--from", "derangement:r=1", "--to", "derangement:r=2", "-n", "2", "--format",
        "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(value["n"], 2);
    assert_eq!(value["coefficients"].as_array().unwrap().len(), 3);
}

#[test]
fn basis_rejects_malformed_specs() {
    for spec in ["poly-bernoulli", "bernoulli:k=1", "derangement:r=0", "unknown:r=1", "falling:r=1"]
    {
        let err = run(&["basis", "--from", spec, "--to", "falling", "-n", "1"]);
        assert!(matches!(err, Err(CliError::Usage(_))), "spec {spec} should be rejected");
    }
}

#[test]
fn family_flag_combinations_are_validated() {
    assert!(matches!(
        run(&["table", "--family", "poly-bernoulli", "--n-max", "2"]),
        Err(CliError::Usage(_))
    ));
    assert!(matches!(
        run(&["table", "--family", "bernoulli", "-k", "2", "--n-max", "2"]),
        Err(CliError::Usage(_))
    ));
    assert!(matches!(
        run(&["eval", "--family", "stirling2", "-n", "2", "--lambda", "0"]),
        Err(CliError::Usage(_))
    ));
}

#[test]
fn malformed_rationals_are_rejected_before_computation() {
    let err = run(&[
        "eval", "--family", "derangement", "-r", "1", "-n", "2", "--lambda", "0.5",
    ]);
    assert!(matches!(err, Err(CliError::Usage(_))));
    let err = run(&[
        "eval", "--family", "derangement", "-r", "1", "-n", "2", "--lambda", "1/0",
    ]);
    assert!(matches!(err, Err(CliError::Usage(_))));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "verify", "--id", "thm5", "--n-max", "4", "-k", "0..2", "-s", "1..2", "--format", "json",
    ];
    assert_eq!(stdout_of(&args), stdout_of(&args));
}

#[test]
fn help_exits_zero() {
    let outcome = run(&["--help"]).unwrap();
    assert_eq!(outcome.exit_code, 0);
    assert!(outcome.stdout.contains("table"));
}
