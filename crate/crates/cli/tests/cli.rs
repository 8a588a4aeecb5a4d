use std::path::Path;
use std::process::{Command, Output};

use liouville::io::BUILTIN_RB87;

fn liouville(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liouville"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_model(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

/// Parse CSV into header and numeric rows.
fn read_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_owned).collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse::<f64>().unwrap()).collect())
        .collect();
    (header, rows)
}

fn trace_of(report: &str) -> f64 {
    let line = report.lines().find(|l| l.starts_with("trace:")).unwrap();
    line.split_whitespace().nth(1).unwrap().parse().unwrap()
}

fn real_grid(report: &str) -> Vec<Vec<f64>> {
    report
        .lines()
        .skip_while(|l| *l != "real part:")
        .skip(1)
        .take_while(|l| *l != "imaginary part:")
        .map(|l| l.split_whitespace().map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn steady_two_level_has_unit_trace() {
    let o = liouville(&["steady", "--builtin", "two-level", "--x", "0"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!((trace_of(&text) - 1.0).abs() < 1e-10);
    let rho = real_grid(&text);
    let formula = 6.25 / (0.25 + 12.5);
    assert!((rho[1][1] - formula).abs() < 1e-12);
}

#[test]
fn steady_lambda_is_dark() {
    let o = liouville(&["steady", "--builtin", "lambda3", "--x", "0", "--builder", "naive"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rho = real_grid(&stdout(&o));
    assert!(rho[2][2].abs() < 1e-10);
    assert!((rho[0][1] + 0.5).abs() < 1e-9);
}

#[test]
fn steady_singular_model_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_model(dir.path(), "zero.lvm", "levels 3\n");
    let o = liouville(&["steady", "--model", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("steady state not unique"), "{}", stderr(&o));
}

#[test]
fn parse_errors_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_model(dir.path(), "bad.lvm", "levels 2\nham 1 3 1\n");
    let o = liouville(&["steady", "--model", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("2:7"), "{}", stderr(&o));
}

#[test]
fn unknown_builtin_is_user_error() {
    let o = liouville(&["steady", "--builtin", "four-level"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("rb87-waveplate"));
}

#[test]
fn two_level_sweep_peaks_at_resonance() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("two.csv");
    let o = liouville(&["sweep", "--builtin", "two-level", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (header, rows) = read_csv(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(header, ["x", "pop2"]);
    assert_eq!(rows.len(), 401);
    let peak = rows.iter().max_by(|a, b| a[1].total_cmp(&b[1])).unwrap();
    assert_eq!(peak[0], 0.0);
}

#[test]
fn lambda_sweep_shows_dip() {
    let o = liouville(&["sweep", "--builtin", "lambda3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (header, rows) = read_csv(&stdout(&o));
    assert_eq!(header, ["x", "pop3", "coh1_2.re", "coh1_2.im"]);
    let at = |x: f64| rows.iter().find(|r| r[0] == x).unwrap()[1];
    assert!(at(0.0) <= 1e-10);
    assert!(at(0.0) < at(2.0) && at(0.0) < at(-2.0));
}

#[test]
fn sweep_output_is_deterministic_across_thread_counts() {
    let run = |threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_liouville"))
            .args(["sweep", "--builtin", "lambda3"])
            .env("LIOUVILLE_THREADS", threads)
            .output()
            .unwrap();
        assert!(o.status.success());
        o.stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn waveplate_sweep_columns() {
    let dir = tempfile::tempdir().unwrap();
    let text: String = BUILTIN_RB87
        .lines()
        .map(|l| {
            if l.starts_with("sweep ") {
                "sweep delta_s -200 200 5".to_owned()
            } else {
                l.to_owned()
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    let path = write_model(dir.path(), "rb.lvm", &text);
    let o = liouville(&["sweep", "--model", &path]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (header, rows) = read_csv(&stdout(&o));
    assert_eq!(header, ["x", "phi_plus", "phi_minus", "trans_plus", "trans_minus", "dphi"]);
    assert_eq!(rows.len(), 5);
    for r in &rows {
        assert!(r.iter().all(|v| v.is_finite()));
        assert!((r[5] - (r[1] - r[2])).abs() <= 1e-15 * r[1].abs().max(r[2].abs()));
    }
}

#[test]
fn sweep_failures_become_nan_rows() {
    let dir = tempfile::tempdir().unwrap();
    // Decay vanishes at x = 0 and leaves two disconnected levels there.
    let path = write_model(
        dir.path(),
        "gap.lvm",
        "levels 2\nham 2 2 0 0:-0.5\nsrc 1 2 0 1\nsweep g 0 1 3\nobserve pop 2\n",
    );
    let o = liouville(&["sweep", "--model", &path]);
    assert_ne!(o.status.code(), Some(0));
    let lines: Vec<&str> = std::str::from_utf8(&o.stdout).unwrap().lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[1].ends_with("NaN"), "{}", lines[1]);
    assert!(!lines[2].contains("NaN"));
    assert!(stderr(&o).contains("1 of 3"), "{}", stderr(&o));
}

#[test]
fn evolve_free_decay_is_exponential() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_model(
        dir.path(),
        "decay.lvm",
        "levels 2\nham 2 2 0:-0.5\nsrc 1 2 1\nobserve pop 2\n",
    );
    let o = liouville(&["evolve", "--model", &path, "--initial", "2", "--t-end", "5", "--dt", "0.01"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (header, rows) = read_csv(&stdout(&o));
    assert_eq!(header, ["t", "pop2"]);
    assert_eq!(rows.len(), 501);
    for r in &rows {
        assert!((r[1] - (-r[0]).exp()).abs() < 1e-9, "t={}", r[0]);
    }
}

#[test]
fn evolve_ends_at_steady_state() {
    let o = liouville(&["evolve", "--builtin", "two-level", "--x", "0", "--t-end", "50", "--dt", "0.01"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (_, rows) = read_csv(&stdout(&o));
    let last = rows.last().unwrap();
    assert_eq!(last[0], 50.0);
    let steady = real_grid(&stdout(&liouville(&["steady", "--builtin", "two-level", "--x", "0"])));
    assert!((last[1] - steady[1][1]).abs() < 1e-6);
}

#[test]
fn evolve_rejects_large_step_with_bound() {
    let o = liouville(&["evolve", "--builtin", "two-level", "--dt", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(stderr(&o).contains("stability bound 0.04"), "{}", stderr(&o));
}

#[test]
fn validate_reports_closure_violation() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_model(dir.path(), "leak.lvm", "levels 2\nham 2 2 0:-0.5\nsrc 1 2 0.5\n");
    let o = liouville(&["validate", "--model", &path, "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let v = &report["violations"];
    assert!(v.as_array().unwrap().iter().all(|x| x["kind"] == "closure"), "{report}");
    assert!(!v.as_array().unwrap().is_empty());

    let ok = liouville(&["validate", "--builtin", "rb87-waveplate"]);
    assert!(ok.status.success());
    assert!(stdout(&ok).contains("no violations"));
}

#[test]
fn bench_small_sizes() {
    let o = liouville(&["bench", "--sizes", "2,3", "--reps", "3", "--seed", "7", "--json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for r in rows {
        assert_eq!(r["max_diff"].as_f64().unwrap(), 0.0);
        assert!(r["naive_median_s"].as_f64().unwrap() < 1e-3);
        assert!(r["fast_median_s"].as_f64().unwrap() < 1e-3);
    }
    let bad = liouville(&["bench", "--sizes", "1"]);
    assert_eq!(bad.status.code(), Some(1));
}
