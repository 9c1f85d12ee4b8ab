// Copyright 2026 The dephasing Authors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::process::{Command, Output};

fn dephasing(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dephasing"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_writes_csv_to_stdout() {
    let o = dephasing(&[
        "eval", "--s", "1", "--A", "1", "--tmin", "0", "--tmax", "1", "--points", "2",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines,
        ["t,gamma,P_x,phi,C_x,source", "0,0,1,1,1,closed", lines[2]]
    );
    assert!(lines[2].starts_with("1,0.34657359027997"));
    assert!(lines[2].ends_with(",closed"));
}

#[test]
fn eval_to_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let args = [
        "eval", "--s", "2.5", "--A", "0.7", "--eps", "0.3", "--tmin", "0.01", "--tmax", "100",
        "--points", "30", "--log",
    ];
    let direct = dephasing(&args);
    let mut with_out: Vec<&str> = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    assert!(dephasing(&with_out).status.success());
    assert_eq!(fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn non_hermitian_eval_uses_renormalized_bath() {
    let o = dephasing(&[
        "eval", "--tau", "0.5", "--tmin", "0", "--tmax", "1", "--points", "2",
    ]);
    let text = stdout(&o);
    let p: f64 = text
        .lines()
        .nth(2)
        .unwrap()
        .split(',')
        .nth(2)
        .unwrap()
        .parse()
        .unwrap();
    assert!((p - 0.823_485_736_742_351_6).abs() < 1e-13);
}

#[test]
fn invalid_parameters_give_one_line_diagnostic() {
    let o = dephasing(&["eval", "--s", "-1"]);
    assert!(!o.status.success());
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(o.stdout.is_empty());

    let o = dephasing(&["eval", "--tmin", "0", "--log"]);
    assert!(!o.status.success());
}

#[test]
fn unknown_figure_is_rejected() {
    let o = dephasing(&["fig", "--id", "7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    fs::write(
        &conf,
        "# decoupled bath\ns = 0.5\nA = 0\ntmax = 5\npoints = 6\n",
    )
    .unwrap();
    let o = dephasing(&["--config", conf.to_str().unwrap(), "eval"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 7);
    assert!(text
        .lines()
        .skip(1)
        .all(|l| l.split(',').nth(2) == Some("1")));
}

#[test]
fn scan_is_cartesian_and_ordered() {
    let o = dephasing(&[
        "scan", "--s", "0.5,2.5", "--A", "1,2", "--tmin", "0", "--tmax", "1", "--points", "3",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(
        text.lines().next(),
        Some("s,A,B,eps,tau,t,gamma,P_x,phi,C_x,source")
    );
    let keys: Vec<String> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').take(2).collect::<Vec<_>>().join(","))
        .collect();
    assert_eq!(keys.len(), 12);
    assert_eq!(keys[0], "0.5,1");
    assert_eq!(keys[3], "0.5,2");
    assert_eq!(keys[11], "2.5,2");
}

#[test]
fn all_figures_are_written_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["1", "2", "3", "4"] {
        let a = dir.path().join("a");
        let b = dir.path().join("b");
        for d in [&a, &b] {
            assert!(
                dephasing(&["fig", "--id", id, "--outdir", d.to_str().unwrap()])
                    .status
                    .success()
            );
        }
        let name = format!("fig{id}.csv");
        let first = fs::read(a.join(&name)).unwrap();
        assert!(!first.is_empty());
        assert_eq!(first, fs::read(b.join(&name)).unwrap());
    }
}

#[test]
fn figure_3_contains_reference_row() {
    let dir = tempfile::tempdir().unwrap();
    assert!(
        dephasing(&["fig", "--id", "3", "--outdir", dir.path().to_str().unwrap()])
            .status
            .success()
    );
    let text = fs::read_to_string(dir.path().join("fig3.csv")).unwrap();
    assert!(text
        .lines()
        .any(|l| l == format!("1,0,1,{}", 0.5f64.sqrt())));
}

#[test]
fn verify_passes_and_reports_every_check() {
    let o = dephasing(&["verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), dephasing::checks::check_names().len());
    for l in lines {
        let f: Vec<&str> = l.split(' ').collect();
        assert_eq!((f.len(), f[0], f[2]), (4, "CHECK", "pass"), "{l}");
        assert!(f[3].parse::<f64>().is_ok());
    }
}

#[test]
fn tightened_tolerance_fails_oracle_triangle() {
    let o = dephasing(&["verify", "--tol-scale", "1e-7"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text
        .lines()
        .any(|l| l.starts_with("CHECK oracle_quadrature fail")));
}
