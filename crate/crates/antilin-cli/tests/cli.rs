//! End-to-end tests of the `antilin` binary: exit codes, file formats, and
//! report determinism, exercised through real process invocations.

use std::path::Path;
use std::process::Command;

use serde_json::Value;

/// Runs the binary with `ANTILIN_SEED` cleared so ambient state cannot leak in.
fn antilin(args: &[&str]) -> (i32, String, String) {
    antilin_env(args, &[])
}

fn antilin_env(args: &[&str], envs: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_antilin"));
    cmd.args(args).env_remove("ANTILIN_SEED");
    for (key, value) in envs {
        cmd.env(key, value);
    }
    let out = cmd.output().expect("binary should spawn");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("stdout is UTF-8"),
        String::from_utf8(out.stderr).expect("stderr is UTF-8"),
    )
}

fn parse_json(text: &str) -> Value {
    serde_json::from_str(text).expect("output should be valid JSON")
}

fn path_str(path: &Path) -> &str {
    path.to_str().expect("temp paths are UTF-8")
}

#[test]
fn construct_and_verify_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("d4");
    let (code, _, _) = antilin(&["construct", "--dim", "4", "--out", path_str(&stem)]);
    assert_eq!(code, 0);

    let conj = dir.path().join("d4.conj.json");
    let skew = dir.path().join("d4.skew.json");
    assert!(conj.exists() && skew.exists());

    for (path, size) in [(&conj, 10), (&skew, 6)] {
        let (code, stdout, stderr) = antilin(&["verify", "--input", path_str(path)]);
        assert_eq!(code, 0, "stderr: {stderr}");
        let cert = parse_json(&stdout);
        assert_eq!(cert["passed"], Value::Bool(true));
        assert_eq!(cert["size"], Value::from(size));
        assert_eq!(cert["dim"], Value::from(4));
    }
}

#[test]
fn construct_writes_only_requested_kind() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("d2");
    let (code, _, _) = antilin(&[
        "construct",
        "--dim",
        "2",
        "--kind",
        "conjugation",
        "--out",
        path_str(&stem),
    ]);
    assert_eq!(code, 0);
    assert!(dir.path().join("d2.conj.json").exists());
    assert!(!dir.path().join("d2.skew.json").exists());
}

#[test]
fn fourier_baseline_verifies_at_any_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("f5");
    let (code, _, _) = antilin(&[
        "construct",
        "--dim",
        "5",
        "--method",
        "fourier",
        "--kind",
        "conjugation",
        "--out",
        path_str(&stem),
    ]);
    assert_eq!(code, 0);
    let (code, stdout, _) = antilin(&["verify", "--input", path_str(&dir.path().join("f5.conj.json"))]);
    assert_eq!(code, 0);
    assert_eq!(parse_json(&stdout)["size"], Value::from(5));

    // The Fourier family is conjugations only; asking for skew output is invalid.
    let (code, _, _) = antilin(&[
        "construct",
        "--dim",
        "5",
        "--method",
        "fourier",
        "--out",
        path_str(&stem),
    ]);
    assert_eq!(code, 2);
}

#[test]
fn verify_rejects_tampered_set_and_honors_tol_override() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("d2");
    antilin(&["construct", "--dim", "2", "--out", path_str(&stem)]);

    let path = dir.path().join("d2.conj.json");
    let mut file: Value = parse_json(&std::fs::read_to_string(&path).unwrap());
    let entry = &mut file["matrices"][0][0][0];
    let re = entry[0].as_f64().unwrap();
    entry[0] = Value::from(re + 1e-3);
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();

    let (code, stdout, _) = antilin(&["verify", "--input", path_str(&path)]);
    assert_eq!(code, 1);
    assert_eq!(parse_json(&stdout)["passed"], Value::Bool(false));

    // The same set passes under a deliberately loose tolerance.
    let (code, stdout, _) = antilin(&["verify", "--input", path_str(&path), "--tol", "0.5"]);
    assert_eq!(code, 0);
    assert_eq!(parse_json(&stdout)["passed"], Value::Bool(true));
}

#[test]
fn invalid_requests_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let stem = path_str(&dir.path().join("x")).to_string();
    let cases: Vec<Vec<&str>> = vec![
        // power-of-two construction at d = 3
        vec!["construct", "--dim", "3", "--out", &stem],
        // skew conjugations cannot exist at odd dimension
        vec!["search", "--dim", "3", "--kind", "skew", "--target-k", "1"],
        // k beyond the d(d+1)/2 bound at d = 2
        vec!["search", "--dim", "2", "--kind", "conjugation", "--target-k", "4"],
        // dimension guard without --force
        vec!["construct", "--dim", "100", "--out", &stem],
        // --parallel and --max-seconds are mutually exclusive
        vec![
            "search", "--dim", "2", "--kind", "conjugation", "--target-k", "2", "--parallel",
            "--max-seconds", "1",
        ],
        // neither --target-k nor a sweep range
        vec!["search", "--dim", "2", "--kind", "conjugation"],
        // zero dimension
        vec!["signature", "--dim", "0"],
    ];
    for args in cases {
        let (code, _, stderr) = antilin(&args);
        assert_eq!(code, 2, "args {args:?} gave stderr: {stderr}");
    }
}

#[test]
fn data_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();

    let missing = dir.path().join("nope.json");
    let (code, _, _) = antilin(&["verify", "--input", path_str(&missing)]);
    assert_eq!(code, 3);

    let garbled = dir.path().join("garbled.json");
    std::fs::write(&garbled, "not json at all").unwrap();
    let (code, _, _) = antilin(&["verify", "--input", path_str(&garbled)]);
    assert_eq!(code, 3);

    let wrong_schema = dir.path().join("schema.json");
    std::fs::write(
        &wrong_schema,
        r#"{"schema_version":"99","dim":1,"kind":"conjugation","meta":"","tol":1e-10,"matrices":[[[[1.0,0.0]]]]}"#,
    )
    .unwrap();
    let (code, _, stderr) = antilin(&["verify", "--input", path_str(&wrong_schema)]);
    assert_eq!(code, 3, "stderr: {stderr}");

    // Out-of-range operator index in an otherwise valid file.
    let stem = dir.path().join("d2");
    antilin(&["construct", "--dim", "2", "--out", path_str(&stem)]);
    let conj = dir.path().join("d2.conj.json");
    let (code, _, _) = antilin(&["range", "--input", path_str(&conj), "--index", "17"]);
    assert_eq!(code, 3);
}

#[test]
fn general_kind_supports_range_but_not_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("general.json");
    std::fs::write(
        &path,
        r#"{"schema_version":"1","dim":2,"kind":"general","meta":"","tol":1e-10,
           "matrices":[[[[0.5,0.0],[0.0,0.1]],[[0.0,-0.1],[0.25,0.0]]]]}"#,
    )
    .unwrap();

    let (code, _, _) = antilin(&["verify", "--input", path_str(&path)]);
    assert_eq!(code, 2);

    let (code, stdout, _) = antilin(&["range", "--input", path_str(&path), "--samples", "32"]);
    assert_eq!(code, 0);
    let body = parse_json(&stdout);
    assert!(body["radius_estimate"].as_f64().unwrap() > 0.0);
}

#[test]
fn gram_csv_has_expected_shape_and_cell_format() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("d2");
    antilin(&["construct", "--dim", "2", "--out", path_str(&stem)]);
    let conj = dir.path().join("d2.conj.json");
    let csv_path = dir.path().join("gram.csv");

    let (code, _, _) = antilin(&[
        "verify",
        "--input",
        path_str(&conj),
        "--gram-csv",
        path_str(&csv_path),
    ]);
    assert_eq!(code, 0);

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 3);
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells.len(), 3);
        for (j, cell) in cells.iter().enumerate() {
            // 17 significant digits for each component, trailing "i".
            assert!(cell.ends_with('i'), "cell {cell:?}");
            assert!(cell.contains('e'), "cell {cell:?}");
            if i == j {
                assert_eq!(*cell, "2.0000000000000000e0+0.0000000000000000e0i");
            } else {
                assert_eq!(*cell, "0.0000000000000000e0+0.0000000000000000e0i");
            }
        }
    }
}

#[test]
fn search_witness_and_report_agree_with_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("found");
    let report_path = dir.path().join("report.json");
    let (code, stdout, stderr) = antilin(&[
        "search",
        "--dim",
        "2",
        "--kind",
        "conjugation",
        "--target-k",
        "3",
        "--seed",
        "7",
        "--out",
        path_str(&stem),
        "--report",
        path_str(&report_path),
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");

    let report = parse_json(&stdout);
    assert_eq!(report["succeeded"], Value::Bool(true));
    assert_eq!(report["seed"], Value::from(7));
    assert!(report["best_loss"].as_f64().unwrap() < 1e-12);

    // The report file holds exactly the bytes printed to stdout.
    assert_eq!(std::fs::read_to_string(&report_path).unwrap(), stdout);

    // The witness set verifies on its own.
    let witness = dir.path().join("found.set.json");
    assert!(witness.exists());
    let (code, stdout, _) = antilin(&["verify", "--input", path_str(&witness)]);
    assert_eq!(code, 0);
    assert_eq!(parse_json(&stdout)["size"], Value::from(3));
}

#[test]
fn search_reports_are_byte_deterministic_and_parallel_matches() {
    let args = [
        "search", "--dim", "2", "--kind", "skew", "--target-k", "1", "--seed", "42",
        "--restarts", "4",
    ];
    let (c1, first, _) = antilin(&args);
    let (c2, second, _) = antilin(&args);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(first, second);

    let mut parallel_args = args.to_vec();
    parallel_args.push("--parallel");
    let (c3, third, _) = antilin(&parallel_args);
    assert_eq!(c3, 0);
    assert_eq!(first, third);
}

#[test]
fn env_seed_matches_explicit_flag() {
    let explicit = antilin(&[
        "search", "--dim", "2", "--kind", "conjugation", "--target-k", "2", "--seed", "42",
    ]);
    let via_env = antilin_env(
        &["search", "--dim", "2", "--kind", "conjugation", "--target-k", "2"],
        &[("ANTILIN_SEED", "42")],
    );
    assert_eq!(explicit.0, 0);
    assert_eq!(via_env.0, 0);
    assert_eq!(explicit.1, via_env.1);
    assert_eq!(parse_json(&via_env.1)["seed"], Value::from(42));
}

#[test]
fn sweep_writes_one_witness_per_target() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("sweep");
    let (code, stdout, stderr) = antilin(&[
        "search",
        "--dim",
        "2",
        "--kind",
        "conjugation",
        "--k-min",
        "1",
        "--k-max",
        "3",
        "--seed",
        "3",
        "--out",
        path_str(&stem),
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");

    let reports = parse_json(&stdout);
    let reports = reports.as_array().expect("sweep emits a JSON array");
    assert_eq!(reports.len(), 3);
    for (offset, report) in reports.iter().enumerate() {
        assert_eq!(report["target_k"], Value::from(offset + 1));
        assert_eq!(report["succeeded"], Value::Bool(true));
    }
    for k in 1..=3 {
        assert!(dir.path().join(format!("sweep.k{k}.set.json")).exists());
    }
}

#[test]
fn failed_search_exits_1_with_report() {
    let (code, stdout, _) = antilin(&[
        "search", "--dim", "3", "--kind", "conjugation", "--target-k", "3", "--seed", "1",
        "--restarts", "1", "--max-iters", "2",
    ]);
    assert_eq!(code, 1);
    let report = parse_json(&stdout);
    assert_eq!(report["succeeded"], Value::Bool(false));
    assert!(report["best_loss"].as_f64().unwrap() > 1e-12);
}

#[test]
fn signature_reports_subspace_dimensions() {
    let (code, stdout, _) = antilin(&["signature", "--dim", "5"]);
    assert_eq!(code, 0);
    let body = parse_json(&stdout);
    assert_eq!(body["plus_dim"], Value::from(15));
    assert_eq!(body["minus_dim"], Value::from(10));
    assert_eq!(body["total"], Value::from(25));
    assert_eq!(body["signature"], Value::from(5));
    assert_eq!(body["conjugation_bound"], Value::from(15));
    assert_eq!(body["skew_bound"], Value::from(10));
}

#[test]
fn range_emits_samples_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("d2");
    antilin(&["construct", "--dim", "2", "--out", path_str(&stem)]);
    let conj = dir.path().join("d2.conj.json");
    let csv_path = dir.path().join("range.csv");

    let (code, stdout, _) = antilin(&[
        "range",
        "--input",
        path_str(&conj),
        "--samples",
        "64",
        "--seed",
        "5",
        "--csv",
        path_str(&csv_path),
    ]);
    assert_eq!(code, 0);
    let body = parse_json(&stdout);
    let radius = body["radius_estimate"].as_f64().unwrap();
    assert!(radius > 0.0 && radius <= 1.0 + 1e-12, "radius {radius}");
    assert!(body["phase_covariance_residual"].as_f64().unwrap() < 1e-8);

    let samples = body["samples"].as_array().unwrap();
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(csv.lines().count(), samples.len());
}
