// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::process::{Command, Output};

fn kaonlab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kaonlab"))
        .args(args)
        .current_dir(dir)
        .env_remove("KAONLAB_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn no_arguments_prints_usage() {
    let dir = tempfile::tempdir().unwrap();
    let o = kaonlab(&[], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Usage"));
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(kaonlab(&["plot"], dir.path()).status.code(), Some(2));
}

#[test]
fn chsh_scan_rows_and_crossing() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "chsh-scan",
        "--model",
        "approx",
        "--x-from",
        "0.5",
        "--x-to",
        "3",
        "--steps",
        "26",
    ];
    let o = kaonlab(&args, dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,s_max,t_a,t_b,t_a',t_b'"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let f: Vec<f64> = l.split(',').map(|v| v.parse().unwrap()).collect();
            (f[0], f[1])
        })
        .collect();
    assert_eq!(rows.len(), 26);
    let first_violation = rows.iter().find(|(_, s)| *s > 2.0 + 1e-6).unwrap().0;
    assert!(
        (2.0..=2.3).contains(&first_violation),
        "first violation at {first_violation}"
    );
    assert_eq!(stdout(&kaonlab(&args, dir.path())), text);
}

#[test]
fn synth_then_fit_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let o = kaonlab(
        &[
            "synth",
            "--lambda",
            "0.25",
            "--seed",
            "3",
            "--noise",
            "0.02",
            "--out",
            "synthetic.csv",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(dir.path().join("synthetic.csv")).unwrap();
    assert_eq!(text.lines().count(), 21);
    let o = kaonlab(&["fit", "--input", "synthetic.csv"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let est = report["payload"]["fits"][0]["result"]["estimate"]
        .as_f64()
        .unwrap();
    assert!((est - 0.25).abs() < 0.025, "estimate {est}");
    assert_eq!(report["params"]["epsilon"][0].as_f64(), Some(0.0));
    assert!(report["version"].is_string());
    assert_eq!(report["command"][0], "fit");
}

#[test]
fn fit_of_two_datasets_reports_average() {
    let dir = tempfile::tempdir().unwrap();
    for (seed, name) in [("1", "a.csv"), ("2", "b.csv")] {
        kaonlab(
            &["synth", "--lambda", "0.25", "--seed", seed, "--out", name],
            dir.path(),
        );
    }
    let o = kaonlab(&["fit", "--input", "a.csv", "--input", "b.csv"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report["payload"]["weighted_average"]["mean"].is_f64());
}

#[test]
fn malformed_csv_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("typo.csv"),
        "tl,t_r,asym,sigma\n1,1,0.5,0.02\n",
    )
    .unwrap();
    let o = kaonlab(&["fit", "--input", "typo.csv"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("t_l"));

    std::fs::write(
        dir.path().join("zero.csv"),
        "t_l,t_r,asym,sigma\n1,1,0.5,0.02\n2,1,0.4,0.02\n3,1,0.3,0\n",
    )
    .unwrap();
    let o = kaonlab(&["fit", "--input", "zero.csv"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains(":4:"), "{}", stderr(&o));
}

#[test]
fn decoherence_commands_refuse_cp_violation() {
    let dir = tempfile::tempdir().unwrap();
    let o = kaonlab(
        &[
            "asym-curve",
            "--lambda",
            "0.25",
            "--t-first",
            "1",
            "--eps-abs",
            "0.00223",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(4));
    let o = kaonlab(&["asym-curve", "--lambda=-1", "--t-first", "1"], dir.path());
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("kaonlab.conf"),
        "eps_abs = 0\ndelta_m_tau_s = 0.5\n",
    )
    .unwrap();
    let o = kaonlab(&["cp-bounds"], dir.path());
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["payload"]["delta"].as_f64(), Some(0.0));
    assert_eq!(report["params"]["delta_m"].as_f64(), Some(0.5));

    let o = kaonlab(&["cp-bounds", "--eps-abs", "0.00223"], dir.path());
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report["payload"]["delta"].as_f64().unwrap() > 0.0);

    std::fs::write(dir.path().join("bad.conf"), "eps_abs = 0\nseed = 1\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_kaonlab"))
        .arg("cp-bounds")
        .current_dir(dir.path())
        .env("KAONLAB_CONFIG", "bad.conf")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("seed"));
}

#[test]
fn probabilities_grid() {
    let dir = tempfile::tempdir().unwrap();
    let o = kaonlab(
        &["probabilities", "--t-max", "2", "--steps", "5"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t_l,t_r,P_YY,P_NN,P_YN,P_NY,E"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 25);
    for r in rows {
        assert!((r[2] + r[3] + r[4] + r[5] - 1.0).abs() < 1e-10);
    }
}

#[test]
fn measures_and_asym_curve_emit_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = kaonlab(
        &["measures", "--lambda", "0.25", "--steps", "11"],
        dir.path(),
    );
    assert_eq!(
        stdout(&o).lines().next(),
        Some("t,entropy,one_minus_E,C,f,zeta")
    );
    assert_eq!(stdout(&o).lines().count(), 12);
    let o = kaonlab(
        &[
            "asym-curve",
            "--lambda",
            "0.25",
            "--t-first",
            "1",
            "--steps",
            "5",
            "--format",
            "json",
        ],
        dir.path(),
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["payload"].as_array().unwrap().len(), 5);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = kaonlab(&["cp-bounds", "--output", "cp.json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("cp.json")).unwrap();
    assert!(text.contains("delta_reference"));
}
