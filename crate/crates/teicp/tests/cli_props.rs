use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use teicp::cli::{run, EXIT_FAILURE, EXIT_INPUT, EXIT_OK};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

/// Runs the CLI in-process, returning `(exit code, stdout, stderr)`.
fn teicp(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("teicp").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn solve_nonneg_6x4_from_canonical_start() {
    let fixture_a = fixture("nonneg_6x4.txt");
    let (code, out, _) = teicp(&["solve", "--tensor", &fixture_a, "--b", "diag-identity", "--start", "canonical"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["status"], "solution");
    assert!((v["lambda"].as_f64().unwrap() - 515.418136880985).abs() < 1e-3);
    assert_eq!(v["iterations"], 4);
    assert_eq!(v["seed"], Value::Null);
    for key in ["x", "w", "residual_history", "step_history"] {
        assert!(v[key].is_array(), "{key}");
    }
    assert_eq!(v["config"]["eps"].as_f64(), Some(1e-6));
    assert_eq!(v["config"]["max_iter"], 1000);
    assert!(!out.contains("elapsed_seconds"));
}

#[test]
fn solve_csv_has_one_row_per_iterate() {
    let fixture_a = fixture("nonneg_6x4.txt");
    let (code, out, _) = teicp(&[
        "solve", "--tensor", &fixture_a, "--b", "diag-identity", "--eps", "1e-12", "--format", "csv",
    ]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "k,lambda,x1,x2,x3,x4,residual,alpha");
    assert_eq!(lines.len(), 7);
    assert!(lines[1].ends_with(','));
    assert!(lines[2..].iter().all(|l| l.ends_with(",1.0000000000000000e0")));
}

#[test]
fn check_certifies_matrix_pair() {
    let d = fixture("diag12.txt");
    let (code, out, _) = teicp(&["check", "--tensor", &d, "--lambda", "2", "--x", "0,1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["passed"], true);
    let (code, out, _) = teicp(&["check", "--tensor", &d, "--lambda", "1.5", "--x", "0,1"]);
    assert_eq!(code, EXIT_FAILURE);
    assert_eq!(json(&out)["passed"], false);
    let (code, _, _) = teicp(&["check", "--tensor", &d, "--lambda", "2", "--x", "0,1,0"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn input_errors_exit_with_two() {
    let d = fixture("diag12.txt");
    let cases: Vec<Vec<&str>> = vec![
        vec!["solve", "--tensor", "/no/such/file.txt"],
        vec!["solve", "--tensor", &d, "--b", "diag-identity", "--beta", "0.9"],
        vec!["solve", "--tensor", &d, "--ncp", "pfb", "--tau", "1.5"],
        vec!["solve", "--tensor", &d, "--b", "cube"],
        vec!["solve"],
        vec!["frobnicate"],
        vec!["multistart", "--tensor", &d, "--starts", "0"],
    ];
    for args in cases {
        let (code, _, err) = teicp(&args);
        assert_eq!(code, EXIT_INPUT, "{args:?}");
        assert!(!err.is_empty());
    }
    // odd order with a sphere-identity B is rejected
    let dir = tempfile::tempdir().unwrap();
    let odd = dir.path().join("odd.txt");
    std::fs::write(&odd, "teicp-tensor v1\norder 3\ndim 2\nsymmetric true\n1 1 1 1.0\n").unwrap();
    let (code, _, _) = teicp(&["solve", "--tensor", odd.to_str().unwrap(), "--b", "sphere-identity"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn multistart_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let tensor = dir.path().join("a.txt");
    let tensor = tensor.to_str().unwrap();
    assert_eq!(teicp(&["random", "--order", "4", "--dim", "4", "--seed", "3", "--out", tensor]).0, EXIT_OK);
    let (c1, first, _) = teicp(&["multistart", "--tensor", tensor, "--starts", "100", "--seed", "7"]);
    let (c2, second, _) = teicp(&["multistart", "--tensor", tensor, "--starts", "100", "--seed", "7", "--parallel"]);
    assert_eq!(c1, c2);
    assert_eq!(first, second);
    let v = json(&first);
    assert_eq!(v["generator"], "ChaCha8");
    assert_eq!(v["seed"], 7);
    let hits: u64 = v["distinct_solutions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["hit_count"].as_u64().unwrap())
        .sum();
    assert_eq!(hits + v["failure_count"].as_u64().unwrap(), 100);
}

#[test]
fn random_writes_parseable_files() {
    let (code, out, _) = teicp(&["random", "--kind", "nonneg", "--order", "3", "--dim", "3", "--b", "diag-identity"]);
    assert_eq!(code, EXIT_OK);
    let f = teicp::format::parse_tensor(&out).unwrap();
    assert_eq!(f.b, Some(teicp::format::BTag::DiagIdentity));
    assert!(f.tensor.to_general().data().iter().all(|v| *v > 0.0));
}

#[test]
fn tensor_valued_b_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let b = dir.path().join("b.txt");
    // B = identity matrix as a tensor file
    std::fs::write(&b, "teicp-tensor v1\norder 2\ndim 2\nsymmetric true\n1 1 1\n2 2 1\n").unwrap();
    let d = fixture("diag12.txt");
    let spec = format!("tensor:{}", b.display());
    let (code, out, _) = teicp(&["solve", "--tensor", &d, "--b", &spec]);
    assert_eq!(code, EXIT_OK);
    let lambda = json(&out)["lambda"].as_f64().unwrap();
    assert!((lambda - 1.0).abs() < 1e-6 || (lambda - 2.0).abs() < 1e-6);
}

fn status_code(status: &str) -> i32 {
    if status == "solution" {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

#[test]
fn exit_codes_match_report_status() {
    let dir = tempfile::tempdir().unwrap();
    let mut seen = std::collections::BTreeSet::new();
    for seed in 0..30u64 {
        let path = dir.path().join(format!("t{seed}.txt"));
        let p = path.to_str().unwrap();
        let (m, n) = [("4", "4"), ("3", "3"), ("6", "3")][seed as usize % 3];
        teicp(&["random", "--order", m, "--dim", n, "--seed", &seed.to_string(), "--out", p]);
        let (code, out, _) = teicp(&[
            "solve", "--tensor", p, "--start", "random", "--seed", &seed.to_string(), "--max-iter", "100",
        ]);
        let status = json(&out)["status"].as_str().unwrap().to_string();
        assert_eq!(code, status_code(&status), "seed {seed}: {status}");
        seen.insert(status);
    }
    assert!(seen.len() >= 2, "only saw {seen:?}");
}

#[test]
fn experiments_emit_tables() {
    let (code, out, _) = teicp(&[
        "experiment", "nonneg", "--order", "3", "--dim", "4", "--samples", "5", "--format", "csv",
    ]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "m,n,success,mean_iter,mean_time,mean_lambda");
    assert!(lines[1].starts_with("3,4,5,"));
    let (code, out, _) = teicp(&[
        "experiment", "success-rate", "--order", "4", "--dim", "3", "--instances", "3", "--budgets", "1,3",
        "--format", "csv",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("m,n,starts_1,starts_3\n4,3,"));
}

fn binary() -> &'static Path {
    Path::new(env!("CARGO_BIN_EXE_teicp"))
}

#[test]
fn binary_exit_codes_and_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let status = Command::new(binary())
        .args(["solve", "--tensor", &fixture("diag12.txt"), "--out"])
        .arg(&report)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(EXIT_OK));
    let v = json(&std::fs::read_to_string(&report).unwrap());
    assert_eq!(v["status"], "solution");
    let status = Command::new(binary()).args(["solve", "--tensor", "/missing"]).status().unwrap();
    assert_eq!(status.code(), Some(EXIT_INPUT));
    let out = Command::new(binary()).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
}
