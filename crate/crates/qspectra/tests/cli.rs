//! End-to-end tests of the `qspectra` binary: file formats, exit codes,
//! and report shapes.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_qspectra")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn gen_analyze_pipeline_on_the_product_family() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fm.tt");
    let out = run(&[
        "gen",
        "--family",
        "fm",
        "--m",
        "2",
        "--n",
        "3",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "q 4 n 3 kind bool01");
    assert_eq!(lines.count(), 64);

    let out = run(&["analyze", path.to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["degrees"]["deg0"], 2);
    assert_eq!(report["degrees"]["deg2"], 2);
    assert_eq!(report["sensitivity"]["t"], 2);
    let entries = report["bounds"]["entries"].as_array().unwrap();
    let d2 = entries
        .iter()
        .find(|e| e["name"] == "two_valued_deg2")
        .unwrap();
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    assert!((d2["value"].as_f64().unwrap() - pi2).abs() < 1e-9);
    assert_eq!(d2["holds"], true);
}

#[test]
fn analyze_reports_constants_without_failing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("const.tt");
    let out = run(&[
        "gen",
        "--family",
        "constant",
        "--q",
        "3",
        "--n",
        "2",
        "--c",
        "5",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["sensitivity"]["t"], 0);
    assert_eq!(report["degrees"]["deg0"], 0);
}

#[test]
fn parse_errors_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("short.tt");
    std::fs::write(&path, "q 3 n 2 kind bool01\n1\n0\n").unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("q^n = 9"), "{err}");

    // Unknown flags are usage errors too.
    let out = run(&[
        "verify", "--law", "parseval", "--q", "3", "--n", "2", "--kind", "two",
    ]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "missing mode must be a usage error"
    );
}

#[test]
fn verify_exits_zero_on_clean_sweeps() {
    let out = run(&[
        "verify",
        "--law",
        "theorem1",
        "--q",
        "3",
        "--n",
        "2",
        "--kind",
        "two",
        "--exhaustive",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(summary["corpus"]["functions"], 512);
    assert_eq!(summary["laws"][0]["violations"], 0);
    assert!(summary["extremal"].as_array().unwrap().len() <= 10);

    let out = run(&[
        "verify",
        "--law",
        "spectral_I",
        "--q",
        "3",
        "--n",
        "2",
        "--kind",
        "three",
        "--exhaustive",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(summary["corpus"]["functions"], 19683);

    let out = run(&[
        "verify",
        "--law",
        "parseval",
        "--q",
        "5",
        "--n",
        "3",
        "--kind",
        "three",
        "--samples",
        "100",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));

    // Law–kind mismatches are usage errors.
    let out = run(&[
        "verify",
        "--law",
        "theorem1",
        "--q",
        "3",
        "--n",
        "2",
        "--kind",
        "three",
        "--exhaustive",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_all_runs_every_applicable_law() {
    let out = run(&[
        "verify",
        "--law",
        "all",
        "--q",
        "3",
        "--n",
        "2",
        "--kind",
        "two",
        "--exhaustive",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let laws: Vec<&str> = summary["laws"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["law"].as_str().unwrap())
        .collect();
    for expect in [
        "parseval",
        "spectral_I",
        "theorem1",
        "proof_steps",
        "support",
        "prop2",
        "degrees",
    ] {
        assert!(laws.contains(&expect), "{expect} missing from {laws:?}");
    }
    assert!(!laws.contains(&"theorem3"));
    assert!(!laws.contains(&"prop3"));
}

#[test]
fn spectrum_listing_shows_nonzero_entries_in_symmetric_notation() {
    let dir = tempfile::tempdir().unwrap();

    // A constant: one line, W = q^n at z = 0.
    let path = dir.path().join("one.tt");
    std::fs::write(&path, format!("q 3 n 2 kind int\n{}", "1\n".repeat(9))).unwrap();
    let out = run(&["spectrum", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data, vec!["z=(0,0) W= 9"]);

    // h = (1,1,0,0): the middle frequency is absent.
    let path = dir.path().join("h.tt");
    std::fs::write(&path, "q 4 n 1 kind bool01\n1\n1\n0\n0\n").unwrap();
    let out = run(&["spectrum", path.to_str().unwrap()]);
    let text = stdout(&out);
    assert!(!text.contains("z=(2)"), "{text}");
    assert!(text.contains("z=(0) W= 2"), "{text}");
    assert!(text.contains("z=(-1)"), "frequency 3 prints as -1: {text}");

    // A character concentrates on its own frequency.
    let path = dir.path().join("chi.tt");
    let out = run(&[
        "gen",
        "--family",
        "character",
        "--q",
        "3",
        "--z",
        "1,2",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("q 3 n 2 kind complex\n"));
    let out = run(&["spectrum", path.to_str().unwrap()]);
    let data = stdout(&out);
    let lines: Vec<&str> = data.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(lines.len(), 1);
    assert!(lines[0].starts_with("z=(1,-1) W= 9"), "{data}");
}

#[test]
fn gen_writes_canonical_files_that_reparse() {
    let dir = tempfile::tempdir().unwrap();
    for (args, header) in [
        (
            vec!["gen", "--family", "xor_all", "--n", "4"],
            "q 2 n 4 kind bool01",
        ),
        (
            vec!["gen", "--family", "jmath", "--n", "3"],
            "q 2 n 3 kind int",
        ),
        (
            vec!["gen", "--family", "dictator", "--n", "3", "--i", "2"],
            "q 2 n 3 kind bool01",
        ),
        (
            vec!["gen", "--family", "majority", "--n", "3"],
            "q 2 n 3 kind bool01",
        ),
    ] {
        let path = dir.path().join("f.tt");
        let mut full = args.clone();
        full.push("-o");
        full.push(path.to_str().unwrap());
        let out = run(&full);
        assert!(out.status.success(), "{args:?}");
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with(header), "{args:?} produced {text}");
        // Re-analyzing the generated file must succeed.
        let out = run(&["analyze", path.to_str().unwrap()]);
        assert!(out.status.success(), "{args:?}");
    }

    let out = run(&["gen", "--family", "nope", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["gen", "--family", "fm", "--n", "3"]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "fm without --m is a usage error"
    );
}

#[test]
fn threads_env_variable_is_honored() {
    let out = Command::new(bin())
        .env("QSPECTRA_THREADS", "2")
        .args([
            "verify",
            "--law",
            "parseval",
            "--q",
            "3",
            "--n",
            "2",
            "--kind",
            "two",
            "--exhaustive",
        ])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn truth_table_files_roundtrip_bytewise() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.tt");
    let out = run(&[
        "gen",
        "--family",
        "fm",
        "--m",
        "1",
        "--n",
        "2",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let original = std::fs::read_to_string(&path).unwrap();
    let f = qspectra::read_truth_table(&original).unwrap();
    assert_eq!(qspectra::write_truth_table(&f), original);
    assert!(Path::new(&path).exists());
}
