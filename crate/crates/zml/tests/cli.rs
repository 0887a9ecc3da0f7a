//! CLI contract: exit codes, atomic output files, and byte-level
//! determinism of repeated runs.

use std::fs;
use std::path::PathBuf;

fn out_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("zml-cli-test-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> i32 {
    zml::cli::run(std::iter::once("zml").chain(args.iter().copied()))
}

#[test]
fn scan_writes_expected_zero_rows() {
    let out = out_path("scan.csv");
    let code = run(&[
        "--tol",
        "1e-8",
        "--out",
        out.to_str().unwrap(),
        "zeros",
        "scan",
        "--from",
        "10",
        "--to",
        "30",
    ]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("index,ordinate,multiplicity"));
    // three zeros in (10, 30): 14.13, 21.02, 25.01
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3, "{text}");
    assert!(rows[0].contains("14.134725"));
}

#[test]
fn trudgian_bound_json_value() {
    let out = out_path("trudgian.json");
    let code = run(&[
        "--tol",
        "1e-8",
        "--out",
        out.to_str().unwrap(),
        "bounds",
        "trudgian",
        "--T",
        "2.71828182845904523",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let value = v["value"].as_f64().unwrap();
    assert!((value - 2.561).abs() < 1e-6, "{value}");
    assert_eq!(v["conditional_on"], "none");
}

#[test]
fn unknown_flag_is_usage_error_without_output() {
    let out = out_path("never-written.json");
    let code = run(&[
        "--out",
        out.to_str().unwrap(),
        "zeta",
        "--sigma",
        "2",
        "--t",
        "0",
        "--no-such-flag",
    ]);
    assert_eq!(code, 64);
    assert!(!out.exists());
}

#[test]
fn missing_subcommand_is_usage_error() {
    assert_eq!(run(&[]), 64);
}

#[test]
fn pole_is_domain_error_exit_1() {
    let code = run(&["--tol", "1e-8", "zeta", "--sigma", "1", "--t", "0"]);
    assert_eq!(code, 1);
}

#[test]
fn moment_domain_violation_exit_1() {
    let code = run(&[
        "--tol", "1e-8", "moment", "--center", "100", "--delta", "0.9", "--k", "2",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = out_path("det-a.csv");
    let b = out_path("det-b.csv");
    for out in [&a, &b] {
        let code = run(&[
            "--tol",
            "1e-8",
            "--out",
            out.to_str().unwrap(),
            "karatsuba-scan",
            "--from",
            "100",
            "--to",
            "1000",
            "--points",
            "5",
        ]);
        assert_eq!(code, 0);
    }
    let ca = fs::read(&a).unwrap();
    assert_eq!(ca, fs::read(&b).unwrap());
    assert!(String::from_utf8(ca).unwrap().starts_with("T,delta,F,threshold,satisfied\n"));
}

#[test]
fn env_tol_override() {
    // other tests always pass --tol explicitly, so mutating the variable
    // here cannot race with them
    std::env::set_var("ZML_TOL", "not-a-number");
    assert_eq!(run(&["zeta", "--sigma", "2", "--t", "0"]), 1);
    std::env::set_var("ZML_TOL", "1e-9");
    let out = out_path("envtol.json");
    assert_eq!(
        run(&["--out", out.to_str().unwrap(), "zeta", "--sigma", "2", "--t", "0"]),
        0
    );
    std::env::remove_var("ZML_TOL");
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!((v["re"].as_f64().unwrap() - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-9);
}

#[test]
fn contour_verification_via_cli() {
    let out = out_path("contour.json");
    let code = run(&[
        "--tol",
        "1e-8",
        "--out",
        out.to_str().unwrap(),
        "contour",
        "verify-2-1",
        "--gamma",
        "14.134725141734694",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(v["rel_err"].as_f64().unwrap() < 1e-6);
    assert_eq!(v["identity"], "2.1");
    assert!(v["alpha_or_X"].as_f64().is_some());
}
