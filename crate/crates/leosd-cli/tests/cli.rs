//! End-to-end runs of the compiled binary.

use std::path::Path;
use std::process::{Command, Output};

fn leosd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leosd"))
        .args(args)
        .output()
        .expect("binary should launch")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}\nstdout:\n{}\nstderr:\n{}",
        out.status.code(),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn analyze_full_rank_sweep_shows_the_half_rate_dip() {
    let out = leosd(&["analyze", "--table", "full-rank", "--n", "64"]);
    let text = stdout(&out);
    let row = text.lines().find(|l| l.starts_with("32,")).expect("k = 32 row");
    let prob: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
    assert!((prob - 0.288788).abs() < 1e-4, "dip value {prob}");
}

#[test]
fn simulate_is_reproducible_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let csv1 = dir.path().join("w1.csv");
    let csv3 = dir.path().join("w3.csv");
    for (path, workers) in [(&csv1, "1"), (&csv3, "3")] {
        let out = leosd(&[
            "simulate",
            "--code",
            "random:16,8,7",
            "--decoder",
            "leosd",
            "--rho",
            "2",
            "--tau",
            "2",
            "--xi",
            "2",
            "--snr-db",
            "0,2",
            "--min-errors",
            "20",
            "--max-frames",
            "2000",
            "--seed",
            "5",
            "--workers",
            workers,
            "--out",
            path.to_str().unwrap(),
        ]);
        stdout(&out);
    }
    let a = std::fs::read(&csv1).unwrap();
    let b = std::fs::read(&csv3).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "CSV must not depend on worker count");

    let text = String::from_utf8(a).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "snr_db,frames,block_errors,bler,qt_mean,qc_mean,bops_mean,flops_mean,mu_t_pred,mu_c_pred,pest_bound"
    );
    assert_eq!(text.lines().count(), 3, "header plus one row per SNR point");

    let sidecar: serde_json::Value = serde_json::from_slice(
        &std::fs::read(Path::new(&format!("{}.json", csv1.display()))).unwrap(),
    )
    .unwrap();
    assert_eq!(sidecar["tool"], "leosd");
    assert_eq!(sidecar["campaign"]["code"], "random:16,8,7");
    assert_eq!(sidecar["campaign"]["decoder"]["kind"], "leosd");
    assert!(sidecar["version"].as_str().is_some_and(|v| !v.is_empty()));
}

#[test]
fn simulate_reports_zero_error_points_instead_of_failing() {
    let out = leosd(&[
        "simulate",
        "--code",
        "random:16,8,3",
        "--decoder",
        "osd",
        "--order",
        "2",
        "--snr-db",
        "20",
        "--max-frames",
        "300",
        "--seed",
        "1",
    ]);
    let text = stdout(&out);
    let row = text.lines().nth(1).expect("one data row");
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[1], "300", "all frames consumed");
    assert_eq!(fields[2], "0", "no block errors at 20 dB");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("no block errors"), "stderr: {err}");
}

#[test]
fn codes_build_and_inspect_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ebch_8_4.txt");
    let built = leosd(&["codes", "build", "--code", "ebch:8,4", "--out", path.to_str().unwrap()]);
    stdout(&built);

    let inspected =
        leosd(&["codes", "inspect", "--code", path.to_str().unwrap(), "--check-dmin"]);
    let text = stdout(&inspected);
    assert!(text.contains("n: 8"), "{text}");
    assert!(text.contains("k: 4"), "{text}");
    assert!(text.contains("parity check: ok"), "{text}");
    assert!(text.contains("d_min: 4 (exhaustive)"), "{text}");
}

#[test]
fn selftest_passes() {
    let out = leosd(&["selftest"]);
    let text = stdout(&out);
    assert!(text.contains("all selftest checks passed"), "{text}");
    assert!(!text.contains("[FAIL]"), "{text}");
}
