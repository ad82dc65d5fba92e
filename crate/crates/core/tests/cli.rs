use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn lowboost(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lowboost"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn verify_defaults_pass() {
    let out = lowboost(&["verify"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let doc = json(&out);
    assert_eq!(doc["overall"], Value::Bool(true));
    let verdicts = doc["verdicts"].as_array().unwrap();
    assert!(verdicts.len() >= 7);
    assert!(verdicts.iter().all(|v| v["passed"] == Value::Bool(true)));
    assert_eq!(doc["seed"], 42);
}

#[test]
fn sabotage_breaks_momentum_covariance() {
    let out = lowboost(&["verify", "--sabotage=drop-c2-terms"]);
    assert_eq!(code(&out), 1);
    let doc = json(&out);
    assert_eq!(doc["overall"], Value::Bool(false));
    let failed: Vec<&str> = doc["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|v| v["passed"] == Value::Bool(false))
        .map(|v| v["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"extended_covariance"), "{failed:?}");
    assert!(
        failed.contains(&"operator_transform_extended"),
        "{failed:?}"
    );
}

#[test]
fn verify_csv_has_one_row_per_verdict() {
    let out = lowboost(&["verify", "--format=csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("name,residual,threshold,passed"));
    let rows: Vec<&str> = lines.collect();
    let doc = json(&lowboost(&["verify"]));
    assert_eq!(rows.len(), doc["verdicts"].as_array().unwrap().len());
    assert!(rows.iter().all(|r| r.split(',').count() == 4));
}

#[test]
fn verify_rejects_superluminal_velocity() {
    assert_eq!(code(&lowboost(&["verify", "--v=20,0,0"])), 2);
    assert_eq!(code(&lowboost(&["verify", "--m=-1"])), 2);
    assert_eq!(code(&lowboost(&["verify", "--bogus"])), 2);
}

fn matrix(args: &[&str]) -> Vec<Vec<f64>> {
    let mut all = vec!["matrix"];
    all.extend_from_slice(args);
    let out = lowboost(&all);
    assert_eq!(code(&out), 0);
    serde_json::from_value(json(&out)["matrix"].clone()).unwrap()
}

#[test]
fn extended_matrix_time_row() {
    let m = matrix(&["--kind=extended", "--v=1,0,0", "--c=10"]);
    let expected = [1.005, -0.01, 0.0, 0.0];
    for (got, want) in m[0].iter().zip(expected) {
        assert!((got - want).abs() < 1e-15, "{got} vs {want}");
    }
    assert_eq!(m[1], vec![-1.0, 1.0, 0.0, 0.0]);
}

#[test]
fn zero_velocity_matrix_is_identity() {
    let m = matrix(&["--v=0,0,0"]);
    for (i, row) in m.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            assert_eq!(x, if i == j { 1.0 } else { 0.0 });
        }
    }
}

#[test]
fn galilei_matrix_entry() {
    let m = matrix(&["--kind=galilei", "--v=0,2,0"]);
    assert_eq!(m[2][0], -2.0);
    assert_eq!(m[0], vec![1.0, 0.0, 0.0, 0.0]);
}

#[test]
fn matrix_rejects_bad_velocity() {
    assert_eq!(
        code(&lowboost(&[
            "matrix",
            "--kind=lorentz",
            "--v=11,0,0",
            "--c=10"
        ])),
        2
    );
    assert_eq!(code(&lowboost(&["matrix", "--v=1,0"])), 2);
}

#[test]
fn inverse_entry_scan_fits_fourth_order() {
    let out = lowboost(&[
        "order-scan",
        "--scan=inverse-entry",
        "--entry=0,0",
        "--v=1,0,0",
        "--c=10,20,40,80",
    ]);
    assert_eq!(code(&out), 0);
    let exponent = json(&out)["fitted_exponent"].as_f64().unwrap();
    assert!((exponent + 4.0).abs() < 0.005, "{exponent}");
}

#[test]
fn gap_scans_decay_quadratically() {
    for scan in ["lorentz-gap", "truncation-gap", "momentum-shift"] {
        let out = lowboost(&["order-scan", &format!("--scan={scan}")]);
        assert_eq!(code(&out), 0, "{scan}");
        let exponent = json(&out)["fitted_exponent"].as_f64().unwrap();
        assert!(exponent <= -1.9, "{scan}: {exponent}");
    }
}

#[test]
fn scan_needs_four_light_speeds() {
    assert_eq!(
        code(&lowboost(&[
            "order-scan",
            "--scan=lorentz-gap",
            "--c=10,20,40"
        ])),
        2
    );
    assert_eq!(
        code(&lowboost(&[
            "order-scan",
            "--scan=lorentz-gap",
            "--c=10,20,20,40"
        ])),
        2
    );
}

#[test]
fn twin_phase_of_unit_ramp() {
    let out = lowboost(&[
        "twin-phase",
        "--m=1",
        "--traj=quad:a=1,t1=1",
        "--format=table",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("phi = 0.166666667"), "{text}");

    let doc = json(&lowboost(&["twin-phase", "--m=1", "--traj=rest"]));
    assert_eq!(doc["results"][0]["phi"], 0.0);
}

#[test]
fn twin_phase_difference_of_ramps() {
    let out = lowboost(&[
        "twin-phase",
        "--m=1",
        "--traj=quad:a=2,t1=1",
        "--traj=quad:a=1,t1=1",
    ]);
    assert_eq!(code(&out), 0);
    let d = json(&out)["differences"][0]["difference"].as_f64().unwrap();
    assert!((d - 0.5).abs() < 1e-10, "{d}");
}

#[test]
fn twin_phase_reads_trajectory_files() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    // ξ = t² on [0, 1]: φ = ∫ ½(2t)² dt = 2/3, trapezoid error O(h²).
    for i in 0..=200 {
        let t = i as f64 / 200.0;
        writeln!(file, "{t} {}", t * t).unwrap();
    }
    let spec = format!("--traj=file:{}", file.path().display());
    let out = lowboost(&["twin-phase", "--m=1", &spec]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let phi = json(&out)["results"][0]["phi"].as_f64().unwrap();
    assert!((phi - 2.0 / 3.0).abs() < 1e-4, "{phi}");
}

#[test]
fn twin_phase_rejects_bad_specs() {
    for spec in [
        "--traj=wiggle",
        "--traj=quad:a=1",
        "--traj=quad:a=x,t1=1",
        "--traj=file:/nonexistent/xi.txt",
    ] {
        let out = lowboost(&["twin-phase", "--m=1", spec]);
        assert_eq!(code(&out), 2, "{spec}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(code(&lowboost(&["twin-phase", "--m=1"])), 2);
}

#[test]
fn help_exits_cleanly() {
    let out = lowboost(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("twin-phase"));
}
