//! End-to-end tests for the `rees` binary.
//!
//! Every test shells out to the compiled executable, so these exercise the
//! real argument parsing, config resolution, output rendering, and exit
//! codes rather than any internal API.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rees"));
    // keep ambient configuration out of the tests that rely on defaults
    cmd.env_remove("REES_PRECISION");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(stdout(out).trim()).expect("stdout is one JSON value")
}

fn stderr_json(out: &Output) -> serde_json::Value {
    serde_json::from_str(stderr(out).trim()).expect("stderr is one JSON value")
}

/// Unique scratch file path for config tests.
fn scratch(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("rees-cli-test-{}-{}", std::process::id(), name));
    p
}

#[test]
fn sgp_dup_prints_duplication_and_symmetry() {
    let out = run(&["sgp", "dup", "--sgp", "<2,3>", "--ideal", "3", "--m", "5"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "<4,6,11>\nsymmetric: true\n");
}

#[test]
fn sgp_info_reports_invariants() {
    let out = run(&["sgp", "info", "--sgp", "<4,6,11>"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("frobenius: 13"), "got: {text}");
    assert!(text.contains("genus: 7"), "got: {text}");
    assert!(text.contains("symmetric: true"), "got: {text}");
}

#[test]
fn ring_mul_idealization_squares_to_unit() {
    let out = run(&[
        "ring", "mul", "--ring", "zmod:8", "--ideal", "2", "--a", "0", "--b", "0", "3+2t", "3+6t",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn ring_add_reduces_coordinates() {
    let out = run(&[
        "ring", "add", "--ring", "zmod:8", "--ideal", "2", "--a", "0", "--b", "0", "3+2t", "4+6t",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "7\n");
}

#[test]
fn ring_invert_round_trips_through_mul() {
    let inv = run(&[
        "ring", "invert", "--ring", "zmod:9", "--ideal", "3", "--a", "1", "--b", "2", "2+3t",
    ]);
    assert_eq!(code(&inv), 0, "stderr: {}", stderr(&inv));
    let printed = stdout(&inv);
    let literal = printed.trim();
    let out = run(&[
        "ring", "mul", "--ring", "zmod:9", "--ideal", "3", "--a", "1", "--b", "2", "2+3t", literal,
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "1\n", "inverse printed as {literal}");
}

#[test]
fn ring_invert_non_unit_is_domain_error() {
    let out = run(&[
        "ring", "invert", "--ring", "zmod:8", "--ideal", "2", "--a", "0", "--b", "0", "2+2t",
    ]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "");
    let err = stderr_json(&out);
    assert_eq!(err["error"]["kind"], "family");
    assert!(err["error"]["message"].is_string());
}

#[test]
fn ring_delta_matches_unit_criterion() {
    let out = run(&[
        "ring", "delta", "--ring", "zmod:8", "--ideal", "2", "--a", "0", "--b", "0", "3+2t",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn ring_rationalize_clears_the_denominator() {
    let out = run(&[
        "ring",
        "rationalize",
        "--ring",
        "zmod:9",
        "--ideal",
        "3",
        "--a",
        "1",
        "--b",
        "2",
        "--out",
        "json",
        "2+3t",
        "1+3t",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["op"], "rationalize");
    // num * conj(den) = y and den * conj(den) = u, so num/den = y/u
    assert_eq!(v["result"]["y"]["r"], "4");
    assert_eq!(v["result"]["y"]["i"], "3");
    assert_eq!(v["result"]["u"], "2");
}

#[test]
fn malformed_element_is_a_parse_error() {
    let out = run(&[
        "ring", "mul", "--ring", "zmod:8", "--ideal", "2", "--a", "0", "--b", "0", "3+2t", "3+",
    ]);
    assert_eq!(code(&out), 1);
    let err = stderr_json(&out);
    assert_eq!(err["error"]["kind"], "parse");
}

#[test]
fn element_outside_ideal_is_rejected() {
    let out = run(&[
        "ring", "mul", "--ring", "zmod:8", "--ideal", "2", "--a", "0", "--b", "0", "3+3t", "1",
    ]);
    assert_eq!(code(&out), 1);
    let err = stderr_json(&out);
    assert_eq!(err["error"]["kind"], "parse");
    let message = err["error"]["message"].as_str().expect("message");
    assert!(message.contains("ideal"), "got: {message}");
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = run(&["sgp", "info", "--sgp", "<2,3>", "--bogus"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("--bogus"), "stderr: {}", stderr(&out));
}

#[test]
fn missing_subcommand_is_usage_error() {
    let out = run(&[]);
    assert_eq!(code(&out), 2);
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("Usage"));
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let args = [
        "ring", "mul", "--ring", "zmod:8", "--ideal", "2", "--a", "0", "--b", "0", "--out",
        "json", "3+2t", "3+6t",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout, "JSON output must be deterministic");
    let v = json(&first);
    assert_eq!(v["op"], "mul");
    assert_eq!(v["args"], serde_json::json!(["3+2t", "3+6t"]));
    assert_eq!(v["result"]["r"], "1");
    assert_eq!(v["result"]["i"], "0");
    assert_eq!(v["ctx"]["ring"], "zmod:8");
}

#[test]
fn verify_json_is_byte_identical_across_runs() {
    let args = ["verify", "--suite", "unit-criterion", "--out", "json"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(code(&first), 0, "stderr: {}", stderr(&first));
    assert_eq!(first.stdout, second.stdout, "timing must not leak into JSON");
    let v = json(&first);
    let rows = v["result"].as_array().expect("rows");
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["name"], "unit-criterion");
    assert_eq!(rows[0]["passed"], true);
    assert!(rows[0].get("millis").is_none(), "millis must be omitted in JSON");
}

#[test]
fn verify_text_lists_every_check_once() {
    let out = run(&["verify", "--suite", "all"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    for name in [
        "duplication-model",
        "fiber-identifications",
        "comaximal-equivalence",
        "hilbert-across-fibers",
        "random-duplication-invariants",
        "unit-criterion",
        "rationalization",
        "prime-fibers",
        "semigroup-ring-map",
        "reducibility-witness",
    ] {
        assert!(text.contains(name), "missing row for {name} in:\n{text}");
    }
    assert_eq!(text.lines().count(), 11, "ten rows plus a summary:\n{text}");
    assert!(text.contains("10/10 checks passed"), "got:\n{text}");
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    let out = run(&["verify", "--suite", "no-such-check"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn invariants_hilbert_csv_has_expected_rows() {
    let out = run(&[
        "invariants", "hilbert", "--sgp", "<4,6,11>", "--ideal", "6,11", "--nmax", "3", "--out",
        "csv",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,H"));
    for line in lines {
        let (n, h) = line.split_once(',').expect("two columns");
        n.parse::<u64>().expect("n numeric");
        h.parse::<u64>().expect("H numeric");
    }
    assert_eq!(text.lines().count(), 5, "header plus n=0..=3");
}

#[test]
fn invariants_type_and_gorenstein_agree() {
    let ty = run(&["invariants", "type", "--sgp", "<2,3>", "--ideal", "3"]);
    assert_eq!(code(&ty), 0, "stderr: {}", stderr(&ty));
    assert_eq!(stdout(&ty), "1\n");
    let gor = run(&["invariants", "gorenstein", "--sgp", "<2,3>", "--ideal", "3"]);
    assert_eq!(code(&gor), 0);
    assert_eq!(stdout(&gor), "true\n");
}

#[test]
fn invariants_hilbert_oracle_cross_check_passes() {
    let out = run(&[
        "invariants",
        "hilbert",
        "--sgp",
        "<2,3>",
        "--ideal",
        "3",
        "--nmax",
        "4",
        "--oracle",
        "--a",
        "0",
        "--b",
        "0",
        "--field",
        "fp:5",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("H(1) = 3"), "got: {text}");
    assert!(text.contains("oracle: agrees"), "got: {text}");
}

#[test]
fn fibers_csv_rows_are_exact() {
    let out = run(&["fibers", "--a", "0", "--b", "1", "--pmax", "7", "--out", "csv"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines,
        vec![
            "p,disc,splitting,quadratic,family",
            "2,-4,double-root,1,1",
            "3,-4,irreducible,1,1",
            "5,-4,two-distinct-roots,2,<=2",
            "7,-4,irreducible,1,1",
        ],
    );
}

#[test]
fn fibers_duplication_counts_are_exact() {
    let out = run(&[
        "fibers",
        "--duplication",
        "--ideal",
        "6,10",
        "--pmax",
        "8",
        "--out",
        "csv",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines,
        vec![
            "p,disc,splitting,quadratic,family",
            "2,1,two-distinct-roots,2,1",
            "3,1,two-distinct-roots,2,2",
            "5,1,two-distinct-roots,2,2",
            "7,1,two-distinct-roots,2,2",
        ],
    );
}

#[test]
fn fibers_duplication_conflicts_with_explicit_parameters() {
    let out = run(&[
        "fibers", "--duplication", "--ideal", "6,10", "--a", "0", "--pmax", "8",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn fibers_without_pmax_is_usage_error() {
    let out = run(&["fibers", "--a", "0", "--b", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn csv_rejected_for_scalar_results() {
    let out = run(&[
        "ring", "mul", "--ring", "zmod:8", "--ideal", "2", "--a", "0", "--b", "0", "--out", "csv",
        "3+2t", "3+6t",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn precision_env_var_applies_to_series_contexts() {
    let mut cmd = bin();
    cmd.env("REES_PRECISION", "16").args([
        "ring", "delta", "--ring", "series", "--field", "fp:5", "--sgp", "<4,6,11>", "--ideal",
        "X^6,X^11", "--a", "0", "--b", "0", "--out", "json", "X^6",
    ]);
    let out = cmd.output().expect("binary runs");
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["ctx"]["precision"], 16);
    assert_eq!(v["result"], "X^12");
}

#[test]
fn precision_flag_beats_env_var() {
    let mut cmd = bin();
    cmd.env("REES_PRECISION", "16").args([
        "ring", "delta", "--ring", "series", "--field", "fp:5", "--sgp", "<4,6,11>", "--ideal",
        "X^6,X^11", "--prec", "32", "--a", "0", "--b", "0", "--out", "json", "X^6",
    ]);
    let out = cmd.output().expect("binary runs");
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["ctx"]["precision"], 32);
}

#[test]
fn config_file_sets_precision_and_field() {
    let path = scratch("config-basic.conf");
    std::fs::write(&path, "# scratch config\nprecision = 20\nfield = fp:7\n").unwrap();
    let out = run(&[
        "ring",
        "delta",
        "--config",
        path.to_str().unwrap(),
        "--ring",
        "series",
        "--sgp",
        "<4,6,11>",
        "--ideal",
        "X^6,X^11",
        "--a",
        "0",
        "--b",
        "0",
        "--out",
        "json",
        "X^6",
    ]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["ctx"]["precision"], 20);
    assert_eq!(v["ctx"]["field"], "fp:7");
}

#[test]
fn flags_override_config_file() {
    let path = scratch("config-overridden.conf");
    std::fs::write(&path, "precision = 20\nfield = fp:7\n").unwrap();
    let out = run(&[
        "ring",
        "delta",
        "--config",
        path.to_str().unwrap(),
        "--ring",
        "series",
        "--field",
        "fp:5",
        "--prec",
        "40",
        "--sgp",
        "<4,6,11>",
        "--ideal",
        "X^6,X^11",
        "--a",
        "0",
        "--b",
        "0",
        "--out",
        "json",
        "X^6",
    ]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["ctx"]["precision"], 40);
    assert_eq!(v["ctx"]["field"], "fp:5");
}

#[test]
fn config_file_supplies_pmax_for_fibers() {
    let path = scratch("config-pmax.conf");
    std::fs::write(&path, "pmax = 5\n").unwrap();
    let out = run(&[
        "fibers",
        "--config",
        path.to_str().unwrap(),
        "--a",
        "0",
        "--b",
        "1",
        "--out",
        "csv",
    ]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out).lines().count(), 4, "header plus p in {{2,3,5}}");
}

#[test]
fn missing_config_file_is_usage_error() {
    let out = run(&[
        "fibers",
        "--config",
        "/nonexistent/rees.conf",
        "--a",
        "0",
        "--b",
        "1",
        "--pmax",
        "5",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn printed_element_literals_reparse_to_equal_values() {
    // Multiply in a series context, print JSON, feed the result literal back.
    let args = [
        "ring", "mul", "--ring", "series", "--field", "fp:5", "--sgp", "<2,3>", "--ideal",
        "X^3", "--a", "0", "--b", "-X^5", "--out", "json", "X^2+X^3t", "X^3+X^5t",
    ];
    let out = run(&args);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["result"]["r"], "X^5+X^13");
    assert_eq!(v["result"]["i"], "X^6+X^7");
    let literal = "X^5+X^13+(X^6+X^7)t";

    // The canonical echo of the reparsed literal must be the literal itself.
    let again = run(&[
        "ring", "mul", "--ring", "series", "--field", "fp:5", "--sgp", "<2,3>", "--ideal",
        "X^3", "--a", "0", "--b", "-X^5", "--out", "json", literal, literal,
    ]);
    assert_eq!(code(&again), 0, "literal {literal} failed: {}", stderr(&again));
    let w = json(&again);
    assert_eq!(w["args"], serde_json::json!([literal, literal]));
}
