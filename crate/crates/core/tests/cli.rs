mod common;

use std::path::{Path, PathBuf};
use std::process::Command;

use msewitness::cli::{run, EXIT_INVALID, EXIT_NO_CONVERGENCE, EXIT_OK};
use msewitness::io::{operator_to_json, pure_to_json, to_json_string};
use msewitness::rng::random_hermitian;
use msewitness::states::ghz;
use msewitness::HermitianOperator;
use serde_json::Value;
use tempfile::TempDir;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn msewit(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["msewit"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn write_operator(dir: &TempDir, name: &str, op: &HermitianOperator) -> String {
    let p = write(dir, name, &to_json_string(&operator_to_json(op)));
    p.to_str().unwrap().to_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(text: &str) -> Value {
    serde_json::from_str(text.trim()).unwrap()
}

#[test]
fn solve_identity() {
    let dir = TempDir::new().unwrap();
    let op = write(
        &dir,
        "id.json",
        r#"{"dims":[2,2],"re":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}"#,
    );
    let o = msewit(&["solve", "--operator", s(&op), "--partition", "1:2"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let v = json(&o.stdout);
    assert_eq!(v["f_value"].as_f64().unwrap(), 1.0);
    assert_eq!(v["mode"], "sup");
    assert_eq!(v["partition"], "1:2");
}

#[test]
fn witness_then_evaluate_ghz() {
    let dir = TempDir::new().unwrap();
    let psi = ghz(3, 2).unwrap();
    let op = write_operator(&dir, "ghz.json", &psi.projector());
    let state = write(&dir, "psi.json", &to_json_string(&pure_to_json(&psi)));
    let bundle = dir.path().join("w.json");
    let o = msewit(&[
        "witness",
        "--operator",
        &op,
        "--partition",
        "1:2:3",
        "--out",
        s(&bundle),
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.is_empty());
    let w = json(&std::fs::read_to_string(&bundle).unwrap());
    assert!((w["f_sup"].as_f64().unwrap() - 0.5).abs() < 1e-10);

    let o = msewit(&["evaluate", "--witness", s(&bundle), "--state", s(&state)]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let v = json(&o.stdout);
    assert!((v["value"].as_f64().unwrap() + 0.5).abs() < 1e-9);
    assert_eq!(v["detected"], true);
}

#[test]
fn overlapping_partition_is_rejected() {
    let dir = TempDir::new().unwrap();
    let op = write_operator(
        &dir,
        "l.json",
        &HermitianOperator::identity(common::qubits(2)),
    );
    let o = msewit(&["solve", "--operator", &op, "--partition", "1:1,2"]);
    assert_eq!(o.code, EXIT_INVALID);
    assert_eq!(json(&o.stderr)["error"], "InvalidPartition");
    assert!(o.stdout.is_empty());
}

#[test]
fn bad_inputs_exit_invalid() {
    let dir = TempDir::new().unwrap();
    let o = msewit(&["solve", "--partition", "1:2"]);
    assert_eq!(o.code, EXIT_INVALID);
    let bad = write(&dir, "bad.json", r#"{"dims":[2],"re":[[0,1],[0,0]]}"#);
    let o = msewit(&["solve", "--operator", s(&bad), "--partition", "1"]);
    assert_eq!(o.code, EXIT_INVALID);
    assert_eq!(json(&o.stderr)["error"], "NotHermitian");
    let op = write_operator(
        &dir,
        "l.json",
        &HermitianOperator::identity(common::qubits(2)),
    );
    let cfg = write(&dir, "cfg.json", r#"{"tol_gg": 1e-3}"#);
    let o = msewit(&[
        "solve",
        "--operator",
        &op,
        "--partition",
        "1:2",
        "--config",
        s(&cfg),
    ]);
    assert_eq!(o.code, EXIT_INVALID);
    let o = msewit(&[
        "solve",
        "--operator",
        "/nonexistent.json",
        "--partition",
        "1:2",
    ]);
    assert_eq!(o.code, EXIT_INVALID);
}

#[test]
fn exhausted_iterations_exit_no_convergence() {
    let dir = TempDir::new().unwrap();
    let op = write_operator(&dir, "l.json", &random_hermitian(&common::qubits(3), 17));
    let cfg = write(
        &dir,
        "cfg.json",
        r#"{"max_iter": 1, "tol_g": 1e-300, "n_starts": 2}"#,
    );
    let o = msewit(&[
        "solve",
        "--operator",
        &op,
        "--partition",
        "1:2:3",
        "--config",
        s(&cfg),
    ]);
    assert_eq!(o.code, EXIT_NO_CONVERGENCE, "{}", o.stdout);
    assert_eq!(json(&o.stderr)["error"], "NoConvergedSolution");
}

#[test]
fn scan_emits_one_line_per_point() {
    let dir = TempDir::new().unwrap();
    let psi = ghz(3, 2).unwrap();
    let op = write_operator(&dir, "ghz.json", &psi.projector());
    let state = write(&dir, "psi.json", &to_json_string(&pure_to_json(&psi)));
    let o = msewit(&[
        "scan",
        "--operator",
        &op,
        "--partition",
        "1:2:3",
        "--state-family",
        "werner",
        "--psi",
        s(&state),
        "--p-grid",
        "0:1:11",
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let lines: Vec<Value> = o.stdout.lines().map(json).collect();
    assert_eq!(lines.len(), 11);
    for line in &lines {
        let p = line["p"].as_f64().unwrap();
        assert!((line["value"].as_f64().unwrap() - (0.375 - 0.875 * p)).abs() < 1e-9);
        assert_eq!(line["detected"].as_bool().unwrap(), p > 3.0 / 7.0);
    }
}

#[test]
fn oracle_subcommand() {
    let dir = TempDir::new().unwrap();
    let op = write_operator(&dir, "ghz.json", &ghz(3, 2).unwrap().projector());
    let o = msewit(&[
        "oracle",
        "--operator",
        &op,
        "--partition",
        "1:2:3",
        "--grid",
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let v = json(&o.stdout);
    assert_eq!(v["method"], "grid");
    assert!((v["value"].as_f64().unwrap() - 0.5).abs() < 1e-4);
    let o = msewit(&[
        "oracle",
        "--operator",
        &op,
        "--partition",
        "1:2:3",
        "--samples",
        "500",
    ]);
    assert_eq!(json(&o.stdout)["method"], "brute_force");
}

fn binary(args: &[&str], threads: &str) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_msewit"))
        .args(args)
        .env("MSE_THREADS", threads)
        .output()
        .unwrap()
}

#[test]
fn binary_output_is_byte_identical_across_runs_and_threads() {
    let dir = TempDir::new().unwrap();
    let op = write_operator(&dir, "l.json", &random_hermitian(&common::qubits(3), 23));
    let psi = ghz(3, 2).unwrap();
    let state = write(&dir, "psi.json", &to_json_string(&pure_to_json(&psi)));
    let commands: Vec<Vec<&str>> = vec![
        vec![
            "solve",
            "--operator",
            &op,
            "--partition",
            "1,3:2",
            "--seed",
            "5",
        ],
        vec![
            "solve",
            "--operator",
            &op,
            "--partition",
            "1:2:3",
            "--mode",
            "inf",
        ],
        vec!["witness", "--operator", &op, "--partition", "1:2:3"],
        vec![
            "scan",
            "--operator",
            &op,
            "--partition",
            "1:2:3",
            "--state-family",
            "werner",
            "--psi",
            s(&state),
            "--p-grid",
            "0:1:5",
        ],
        vec![
            "oracle",
            "--operator",
            &op,
            "--partition",
            "1:2:3",
            "--samples",
            "300",
        ],
    ];
    for args in &commands {
        let a = binary(args, "1");
        let b = binary(args, "1");
        let c = binary(args, "4");
        assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stdout, c.stdout, "{args:?}");
    }
    let bad = binary(&commands[0], "zero");
    assert_eq!(bad.status.code(), Some(EXIT_INVALID));
}

#[test]
fn witness_bundle_rewrites_byte_identically() {
    let dir = TempDir::new().unwrap();
    let op = write_operator(&dir, "l.json", &random_hermitian(&common::qubits(3), 29));
    let bundle = dir.path().join("w.json");
    let o = msewit(&[
        "witness",
        "--operator",
        &op,
        "--partition",
        "1,2:3",
        "--out",
        s(&bundle),
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let text = std::fs::read_to_string(&bundle).unwrap();
    let w = msewitness::io::read_witness(&bundle).unwrap();
    assert_eq!(
        to_json_string(&msewitness::io::witness_to_json(&w)),
        text.trim_end()
    );
}
