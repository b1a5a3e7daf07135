//! End-to-end tests of the binary: flags, config files, determinism, exit
//! codes and the JSON report schema.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nineteen-vertex"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn verify_passes_with_exit_zero() {
    let out = run(&[
        "verify",
        "regularity",
        "--samples",
        "3",
        "--seed",
        "9",
        "--format",
        "json",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = stdout_json(&out);
    assert_eq!(report["check"], "regularity");
    assert_eq!(report["samples"]["valid"], 3);
    assert_eq!(report["failures"].as_array().unwrap().len(), 0);
    assert_eq!(report["couplings"][0], "1");
}

#[test]
fn reports_are_deterministic_modulo_elapsed_time() {
    let args = [
        "verify",
        "unitarity",
        "--samples",
        "4",
        "--seed",
        "31",
        "--couplings",
        "3/2,5/3",
        "--format",
        "json",
    ];
    let mut a = stdout_json(&run(&args));
    let mut b = stdout_json(&run(&args));
    a["elapsed_ms"] = serde_json::json!(0);
    b["elapsed_ms"] = serde_json::json!(0);
    assert_eq!(a, b);
}

#[test]
fn zero_samples_is_a_config_error_with_exit_two() {
    let out = run(&["verify", "ybe", "--samples", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("samples"), "stderr: {err}");
}

#[test]
fn zero_coupling_is_a_config_error() {
    let out = run(&["verify", "ybe", "--couplings", "0,2", "--samples", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failing_check_exits_one() {
    // an unreachable float tolerance forces recorded failures
    let out = run(&[
        "verify",
        "ybe",
        "--backend",
        "float",
        "--samples",
        "2",
        "--seed",
        "5",
        "--tolerance",
        "1e-30",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert!(!report["failures"].as_array().unwrap().is_empty());
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("campaign.json");
    std::fs::write(
        &cfg_path,
        r#"{"seed": 77, "samples": 2, "couplings": ["1", "1"]}"#,
    )
    .unwrap();
    let out = run(&[
        "verify",
        "regularity",
        "--config",
        cfg_path.to_str().unwrap(),
        "--samples",
        "3",
        "--format",
        "json",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = stdout_json(&out);
    // file seed and couplings apply; the explicit --samples flag wins
    assert_eq!(report["seed"], 77);
    assert_eq!(report["couplings"][1], "1");
    assert_eq!(report["samples"]["valid"], 3);
}

#[test]
fn output_directory_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["verify", "divisors", "--samples", "2", "--seed", "12"])
        .env("NINETEEN_VERTEX_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let path = dir.path().join("divisors-seed12.json");
    let text = std::fs::read_to_string(&path).expect("report file written");
    let report: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report["check"], "divisors");
}

#[test]
fn sample_emits_weights_as_rational_strings() {
    let out = run(&["sample", "--samples", "2", "--seed", "4", "--emit-lax"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    let samples = doc["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 2);
    for s in samples {
        assert_eq!(s["chart"], "spectral");
        let w = s["weights"].as_object().unwrap();
        assert_eq!(w.len(), 14);
        // rationals serialize as p/q strings
        for v in w.values() {
            let txt = v.as_str().unwrap();
            nineteen_vertex_core::scalar::parse_rational(txt).unwrap();
        }
        let lax = s["lax"].as_array().unwrap();
        assert_eq!(lax.len(), 9);
    }
}

#[test]
fn sample_k3_chart_reports_complex_weights_and_discriminant() {
    let out = run(&["sample", "--chart", "k3", "--samples", "1", "--seed", "6"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc = stdout_json(&out);
    let s = &doc["samples"][0];
    assert_eq!(s["chart"], "k3");
    let w = s["weights"].as_object().unwrap();
    // complex values as [re, im] pairs; c+ and c- agree
    assert_eq!(w["c_plus"], w["c_minus"]);
    assert!(w["c_plus"].as_array().unwrap().len() == 2);
}

#[test]
fn divisors_and_variety_run_exactly_on_the_quartic_chart() {
    for check in ["divisors", "variety"] {
        let out = run(&[
            "verify",
            check,
            "--chart",
            "k3",
            "--samples",
            "2",
            "--seed",
            "5",
            "--format",
            "json",
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let report = stdout_json(&out);
        assert_eq!(report["chart"], "k3");
        assert_eq!(report["max_residual"], 0.0);
        // inputs on this chart carry quadratic-extension coordinates
        assert_eq!(report["failures"].as_array().unwrap().len(), 0);
    }
}

#[test]
fn transfer_and_hamiltonian_subcommands_run() {
    let out = run(&[
        "transfer",
        "--sites",
        "2",
        "--check",
        "commute",
        "--samples",
        "2",
        "--seed",
        "3",
    ]);
    assert!(out.status.success());
    let out = run(&[
        "hamiltonian",
        "--check",
        "equivalence",
        "--tangent",
        "1,1,0,0",
        "--twist",
        "3/2",
    ]);
    assert!(out.status.success());
}
