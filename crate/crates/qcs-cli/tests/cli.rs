//! End-to-end checks of the `qcs` binary: exit-code contract, output
//! formats, and byte-level determinism.

use std::path::Path;
use std::process::{Command, Output};

fn qcs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn all_pass_run_exits_zero() {
    let out = qcs(&["ramanujan", "--q", "0.5", "--n-max", "6"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("[\n"));
    assert!(stdout.contains("\"check\":\"ramanujan.moment\""));
}

#[test]
fn invalid_q_exits_two_with_diagnostic() {
    let out = qcs(&["special", "--q", "1.5"]);
    assert_eq!(code(&out), 2);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("q must lie strictly in (0,1)"), "{stderr}");
}

#[test]
fn unknown_flags_exit_two() {
    let out = qcs(&["special", "--no-such-flag"]);
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty());
}

#[test]
fn forced_failure_tolerance_exits_one_for_every_command() {
    for cmd in [
        "special",
        "ramanujan",
        "algebra",
        "coherent",
        "completeness",
        "evolve",
        "verify-all",
    ] {
        let out = qcs(&[
            cmd,
            "--tol",
            "1e-30",
            "--n-max",
            "3",
            "--trunc",
            "12",
            "--samples",
            "2000",
            "--out",
            "/dev/null",
        ]);
        assert_eq!(code(&out), 1, "command {cmd} should fail at tol=1e-30");
    }
}

#[test]
fn results_are_still_written_on_tolerance_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fail.json");
    let out = qcs(&[
        "ramanujan",
        "--tol",
        "1e-30",
        "--n-max",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.contains("\"pass\":false"));
}

#[test]
fn csv_has_the_documented_header_and_shape() {
    let out = qcs(&[
        "completeness",
        "--n-max",
        "2",
        "--samples",
        "2000",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let mut lines = stdout.lines();
    assert_eq!(
        lines.next().unwrap(),
        "check,param_q,param_a1,param_c,index_m,index_n,value_re,value_im,reference,abs_err,rel_err,pass"
    );
    let element_rows = stdout
        .lines()
        .filter(|l| l.starts_with("completeness.element,"))
        .count();
    assert_eq!(element_rows, 9); // (n_max+1)²
    for line in stdout.lines().skip(1) {
        assert_eq!(line.split(',').count(), 12, "bad row: {line}");
    }
}

#[test]
fn completeness_table_of_nine_by_nine_has_81_element_rows() {
    let out = qcs(&[
        "completeness",
        "--n-max",
        "8",
        "--samples",
        "2000",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 0);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let element_rows = stdout
        .lines()
        .filter(|l| l.starts_with("completeness.element,"))
        .count();
    assert_eq!(element_rows, 81);
}

#[test]
fn identical_configs_give_byte_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for path in [&a, &b] {
        let out = qcs(&[
            "verify-all",
            "--seed",
            "7",
            "--samples",
            "2000",
            "--n-max",
            "3",
            "--trunc",
            "16",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
    let (ba, bb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!ba.is_empty());
    assert_eq!(ba, bb, "same seed must give byte-identical output");
}

#[test]
fn different_seeds_change_monte_carlo_rows() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for (path, seed) in [(&a, "7"), (&b, "8")] {
        let out = qcs(&[
            "completeness",
            "--seed",
            seed,
            "--samples",
            "2000",
            "--n-max",
            "2",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
    }
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn bad_output_path_exits_two() {
    assert!(!Path::new("/no/such/dir").exists());
    let out = qcs(&["special", "--out", "/no/such/dir/out.json"]);
    assert_eq!(code(&out), 2);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("/no/such/dir/out.json"), "{stderr}");
}
