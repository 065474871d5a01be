//! Black-box tests of the command-line interface: golden output lines for
//! `eval`, registry coverage for `list`, verdict lines and exit codes for
//! `verify`, and the full exit-code contract for `sweep` against the three
//! fixture configs under `tests/fixtures/`.

use std::path::PathBuf;
use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypercong"))
        .args(args)
        .output()
        .expect("spawn CLI")
}

fn cli_in(dir: &PathBuf, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypercong"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("spawn CLI")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Fresh scratch directory for one test.
fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hypercong-cli-{tag}-{}", std::process::id()));
    std::fs::remove_dir_all(&dir).ok();
    std::fs::create_dir_all(&dir).expect("create scratch dir");
    dir
}

// ---------------------------------------------------------------------------
// eval

#[test]
fn eval_prints_exact_values() {
    let out = cli(&["eval", "--top", "2,2,2", "--bottom", "1,1", "--z", "1", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "784\n");

    let out = cli(&["eval", "--top", "-1,1", "--bottom", "1", "--z", "1", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0\n");

    // Fractional parameters and a fractional result: 1 - 1/2 - 1/8.
    let out = cli(&["eval", "--top", "-1/2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "3/8\n");
}

#[test]
fn eval_reports_valuations_and_residues() {
    let out = cli(&["eval", "--top", "2,2,2", "--bottom", "1,1", "--z", "1", "--n", "6", "--p", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "784 (v_7 = 2)\n");

    let out = cli(&["eval", "--top", "2,2,2", "--bottom", "1,1", "--n", "6", "--mod", "7^2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0 (mod 49)\n");

    let out = cli(&["eval", "--top", "2,2,2", "--bottom", "1,1", "--n", "6", "--mod", "11^2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "58 (mod 121)\n");
}

#[test]
fn eval_rejects_malformed_input() {
    // Unparseable rational.
    let out = cli(&["eval", "--top", "2,banana", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error:"), "{}", stderr(&out));

    // Bad shape: bottoms must be one fewer than tops.
    let out = cli(&["eval", "--top", "2", "--bottom", "1,1", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));

    // Modulus below 2.
    let out = cli(&["eval", "--top", "2", "--n", "3", "--mod", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

// ---------------------------------------------------------------------------
// list

#[test]
fn list_covers_the_whole_registry() {
    let out = cli(&["list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for id in [
        "main_theorem",
        "sun_conjecture",
        "binomial_cube",
        "catalan_mod_p2",
        "3f2_half",
        "karlsson_minton",
        "sign_symmetry",
        "harmonic_weighted",
        "shifted_congruence",
        "derivative_identity",
        "phi_prime_chain",
        "taylor_step",
        "np_series",
        "exponent_reduction",
    ] {
        assert!(text.contains(id), "missing {id} in list output");
    }
    assert!(text.contains("[exploratory]"), "exploratory tag missing");
    assert!(text.contains("claim:") && text.contains("gate:"), "metadata missing");
}

// ---------------------------------------------------------------------------
// verify

#[test]
fn verify_prints_a_verdict_line() {
    let out = cli(&["verify", "--check", "main_theorem", "--p", "7", "--r", "1", "--a", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let line = stdout(&out);
    assert!(line.contains("main_theorem") && line.contains("PASS"), "{line}");
    assert!(line.contains("v = 2") && line.contains("residual 16"), "{line}");
}

#[test]
fn verify_exit_codes_follow_the_verdict() {
    // A sharper claim than the observed valuation: FAIL, exit 1.
    let out = cli(&[
        "verify", "--check", "main_theorem", "--p", "7", "--r", "1", "--a", "1", "--claim", "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"), "{}", stdout(&out));

    // Gate-failing parameters: SKIP is not a failure.
    let out = cli(&["verify", "--check", "main_theorem", "--p", "8", "--r", "1", "--a", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("SKIP"), "{}", stdout(&out));

    // Unknown check id: usage error.
    let out = cli(&["verify", "--check", "riemann_hypothesis"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown check"), "{}", stderr(&out));

    // Unparseable mode: usage error.
    let out = cli(&["verify", "--check", "main_theorem", "--mode", "psychic"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_accepts_vector_and_rational_parameters() {
    let out = cli(&[
        "verify", "--check", "shifted_congruence", "--p", "5", "--r", "1", "--a", "1",
        "--s-vec", "2,0,1", "--t-vec", "1,0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS"), "{}", stdout(&out));

    let out = cli(&[
        "verify", "--check", "karlsson_minton", "--a", "4", "--m-list", "1,2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("value = 0"), "{}", stdout(&out));

    let out = cli(&[
        "verify", "--check", "main_theorem", "--p", "7", "--r", "1", "--a", "1",
        "--x", "51", "--mode", "cross-check",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let line = stdout(&out);
    assert!(line.contains("PASS") && line.contains("cross-checked"), "{line}");
}

// ---------------------------------------------------------------------------
// sweep

#[test]
fn sweep_clean_config_exits_zero_and_writes_json() {
    let dir = scratch("clean");
    let out = cli_in(&dir, &["sweep", "--config", &fixture("ci_clean.json")]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("main_theorem:") && text.contains("derivative_identity:"), "{text}");
    assert!(text.contains("verdicts ->"), "{text}");

    let report: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.join("reports/ci_clean_report.json")).expect("report"),
    )
    .expect("valid JSON");
    assert_eq!(report["schema_version"], "1");
    assert!(report["verdicts"].as_array().is_some_and(|v| !v.is_empty()));
    assert_eq!(report["config"]["p_min"], 3);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sweep_regression_config_exits_one_and_writes_csv() {
    let dir = scratch("regression");
    let out = cli_in(&dir, &["sweep", "--config", &fixture("ci_regression.json")]);
    assert_eq!(out.status.code(), Some(1), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("fail"), "{}", stdout(&out));

    let csv = std::fs::read_to_string(dir.join("reports/ci_regression_report.csv")).expect("report");
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("check_id,p,r,a,s,claimed,observed_valuation,residual,status")
    );
    assert!(csv.contains(",FAIL"), "{csv}");

    // CSV reports carry no timestamp, so a second run is byte-identical.
    let rerun = cli_in(&dir, &["sweep", "--config", &fixture("ci_regression.json")]);
    assert_eq!(rerun.status.code(), Some(1));
    let csv_again =
        std::fs::read_to_string(dir.join("reports/ci_regression_report.csv")).expect("report");
    assert_eq!(csv, csv_again, "CSV output must be deterministic");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sweep_bad_configs_exit_two() {
    let dir = scratch("invalid");
    // Unknown check id: config error.
    let out = cli_in(&dir, &["sweep", "--config", &fixture("ci_invalid.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error:"), "{}", stderr(&out));

    // Missing file: I/O error.
    let out = cli_in(&dir, &["sweep", "--config", "no/such/config.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot read"), "{}", stderr(&out));

    // Malformed JSON: config error.
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ \"checks\": [").expect("write");
    let out = cli_in(&dir, &["sweep", "--config", bad.to_str().expect("utf-8 path")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bad config"), "{}", stderr(&out));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sweep_respects_the_jobs_flag() {
    let dir = scratch("jobs");
    let out = cli_in(
        &dir,
        &["--jobs", "1", "sweep", "--config", &fixture("ci_clean.json")],
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(dir.join("reports/ci_clean_report.json").exists());
    std::fs::remove_dir_all(&dir).ok();
}
