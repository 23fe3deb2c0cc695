//! End-to-end contract tests for the `bniep5` binary: exit codes, output
//! round-trips, and sampler determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bniep5"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn check_exit_codes_cover_all_verdicts() {
    assert_eq!(
        run(&["check", "1", "0.3", "0.2", "-0.7", "-0.8"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&["check", "0", "0", "0", "0", "0"]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["check", "1", "0.8", "0.1", "-0.9", "-1"])
            .status
            .code(),
        Some(1)
    );
    // Positive trace, split sign pattern, intersection condition fails.
    assert_eq!(
        run(&["check", "1", "0.9", "0.1", "-0.951", "-0.951"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["check", "1", "2", "3"]).status.code(), Some(64));
    assert_eq!(
        run(&["check", "1", "2", "3", "4", "x"]).status.code(),
        Some(64)
    );
    assert_eq!(
        run(&["check", "1", "2", "3", "4", "inf"]).status.code(),
        Some(64)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["sample", "--n", "0"]).status.code(), Some(64));
}

#[test]
fn help_is_not_an_error() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["check", "--help"]).status.code(), Some(0));
}

#[test]
fn construct_zero_spectrum_prints_zero_matrix() {
    let out = run(&["construct", "0", "0", "0", "0", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    assert!(text.contains("# case: all_zero"));
    let data_rows: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .collect();
    assert_eq!(data_rows, vec!["0 0 0 0 0"; 5]);
}

#[test]
fn construct_reports_infeasibility_reason() {
    let out = run(&["construct", "1", "0.9", "-0.5", "-0.6", "-0.8"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_str(&out).contains("violated: loewy_mcdonald"));
}

#[test]
fn construct_output_verifies_through_stdin() {
    for spectrum in [
        ["1", "0.3", "0.2", "-0.7", "-0.8"],
        ["1", "-0.1", "-0.2", "-0.3", "-0.4"],
        ["1", "0.3", "0.2", "-0.7", "-0.75"],
        ["0", "0", "0", "0", "0"],
    ] {
        let constructed = run(&[&["construct"][..], &spectrum[..]].concat());
        assert_eq!(constructed.status.code(), Some(0), "construct {spectrum:?}");
        let verified = run_with_stdin(
            &[&["verify"][..], &spectrum[..]].concat(),
            &stdout_str(&constructed),
        );
        assert_eq!(verified.status.code(), Some(0), "verify {spectrum:?}");
    }
}

#[test]
fn verify_rejects_wrong_spectrum_and_bad_matrix() {
    let identity = "1 0 0 0 0\n0 1 0 0 0\n0 0 1 0 0\n0 0 0 1 0\n0 0 0 0 1\n";
    let out = run_with_stdin(&["verify", "1", "1", "1", "1", "0"], identity);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_str(&out).contains("max_eig_error: 1"));

    let out = run_with_stdin(&["verify", "0", "0", "0", "0", "0"], "not a matrix");
    assert_eq!(out.status.code(), Some(65));

    let out = run_with_stdin(&["verify", "0", "0", "0", "0", "0"], "1 2 3\n");
    assert_eq!(out.status.code(), Some(65));
}

#[test]
fn verify_zero_matrix_round_trip() {
    let zeros = "0 0 0 0 0\n".repeat(5);
    let out = run_with_stdin(&["verify", "0", "0", "0", "0", "0"], &zeros);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn sample_output_is_deterministic() {
    let a = run(&["sample", "--n", "200", "--seed", "42"]);
    let b = run(&["sample", "--n", "200", "--seed", "42"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "same seed must give identical bytes");
    let c = run(&["sample", "--n", "200", "--seed", "43"]);
    assert_ne!(a.stdout, c.stdout, "different seed should differ");
}

#[test]
fn sample_include_example_matches_construct_row() {
    let sampled = run(&["sample", "--n", "1", "--seed", "42", "--include-example"]);
    assert_eq!(sampled.status.code(), Some(0));
    let constructed = run(&[
        "construct",
        "1",
        "0.3",
        "0.2",
        "-0.7",
        "-0.8",
        "--format",
        "csv",
    ]);
    assert_eq!(stdout_str(&sampled), stdout_str(&constructed));
}

#[test]
fn sample_trace_zero_run_is_total_and_accurate() {
    let out = run(&["sample", "--n", "1000", "--seed", "42", "--trace", "zero"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = stdout_str(&out);
    let rows: Vec<&str> = stdout.lines().skip(1).collect();
    assert_eq!(rows.len(), 1000);
    for row in rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_ne!(fields[6], "unknown", "zero trace must be decided: {row}");
        if fields[6] == "feasible" {
            assert!(fields[9].parse::<f64>().unwrap() <= 1e-7, "{row}");
        }
    }
}

#[test]
fn sample_positive_trace_summary_has_no_failures() {
    let out = run(&["sample", "--n", "500", "--seed", "7", "--trace", "positive"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = stdout_str(&out);
    let rows: Vec<&str> = stdout.lines().skip(1).collect();
    assert_eq!(rows.len(), 500);
    for row in rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 11);
        // A feasible row always carries verification evidence.
        if fields[6] == "feasible" {
            assert!(!fields[9].is_empty() && !fields[10].is_empty(), "{row}");
            assert!(fields[9].parse::<f64>().unwrap() <= 1e-7);
        } else {
            assert!(fields[9].is_empty() && fields[10].is_empty(), "{row}");
        }
    }
}

#[test]
fn check_json_shape() {
    let out = run(&[
        "check", "1", "0.3", "0.2", "-0.7", "-0.8", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["verdict"], "feasible");
    assert_eq!(v["case"], "bordered");
    assert_eq!(v["conditions"]["loewy_mcdonald_ok"], true);
    assert!(v["violated"].is_null());
}

#[test]
fn construct_json_matrix_round_trips() {
    let out = run(&[
        "construct",
        "1",
        "0.4",
        "0.1",
        "-0.6",
        "-0.9",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let matrix = v["matrix"].as_array().unwrap();
    assert_eq!(matrix.len(), 5);
    assert_eq!(v["residuals"]["min_entry"], 0.0);
}

#[test]
fn example_reproduces_and_exits_zero() {
    let out = run(&["example"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    assert!(text.contains("ok: true"));
    assert!(text.contains("circle_sum: 0.55"));
}
