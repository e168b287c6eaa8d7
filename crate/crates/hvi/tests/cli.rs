//! End-to-end tests of the `hvi-bench` binary: exit codes, deterministic
//! CSV output, plotting, and config validation.

use std::path::Path;
use std::process::{Command, Output};

fn bench(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hvi-bench"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

const GOOD_CONFIG: &str = r#"{
  "problem": {"kind": "eq_selection", "nu": 2},
  "algorithm": {"kind": "alg1", "theta": 0.1, "delta": 0.1},
  "seed": 42,
  "epoch_budget": 30,
  "eval_every_epochs": 5,
  "output": {"csv_path": "trace.csv"}
}"#;

#[test]
fn run_produces_deterministic_csv() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "cfg.json", GOOD_CONFIG);

    let out = bench(&["run", "--config", &cfg, "--out-dir", "a"], tmp.path());
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let out = bench(&["run", "--config", &cfg, "--out-dir", "b"], tmp.path());
    assert!(out.status.success());

    let a = std::fs::read(tmp.path().join("a/trace.csv")).unwrap();
    let b = std::fs::read(tmp.path().join("b/trace.csv")).unwrap();
    assert_eq!(a, b, "identical seeds must give byte-identical CSVs");
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("epochs,iter_s,iter_k,feas_erg,opt_erg,dist_erg,feas_w,opt_w,dist_w,wall_s"));
}

#[test]
fn schema_violations_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = write(
        tmp.path(),
        "bad.json",
        r#"{"problem":{"kind":"eq_selection","nu":1},
            "algorithm":{"kind":"alg1","theta":0.0,"delta":0.1},
            "seed":1,"epoch_budget":10}"#,
    );
    let out = bench(&["run", "--config", &bad], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("algorithm.theta"));

    let malformed = write(tmp.path(), "malformed.json", "{ not json");
    let out = bench(&["validate", "--config", &malformed], tmp.path());
    assert_eq!(out.status.code(), Some(2));

    let rejected = write(
        tmp.path(),
        "alg1_constrained.json",
        r#"{"problem":{"kind":"lin_constrained","nu":1},
            "algorithm":{"kind":"alg1","theta":0.1,"delta":0.1},
            "seed":1,"epoch_budget":10}"#,
    );
    let out = bench(&["validate", "--config", &rejected], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("iteration-dependent sampling"));
}

#[test]
fn validate_reports_schedule_warnings_without_refusing() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "cfg.json", GOOD_CONFIG);
    let out = bench(&["validate", "--config", &cfg], tmp.path());
    assert!(out.status.success());
    // δ = 0.1 fails the summability diagnostic under the default ρ — a
    // warning, not a refusal.
    assert!(String::from_utf8_lossy(&out.stdout).contains("warnings"));
}

#[test]
fn plot_renders_svg_and_rejects_missing_columns() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "cfg.json", GOOD_CONFIG);
    let out = bench(&["run", "--config", &cfg], tmp.path());
    assert!(out.status.success());

    let csv = tmp.path().join("trace.csv");
    let svg = tmp.path().join("chart.svg");
    let out = bench(
        &["plot", "--inputs", csv.to_str().unwrap(), "--out", svg.to_str().unwrap()],
        tmp.path(),
    );
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let svg_text = std::fs::read_to_string(&svg).unwrap();
    assert!(svg_text.starts_with("<svg"));
    assert!(svg_text.contains("<polyline"));

    let broken = write(tmp.path(), "broken.csv", "epochs,feas\n1.0,0.5\n");
    let out = bench(
        &["plot", "--inputs", &broken, "--out", svg.to_str().unwrap()],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn list_problems_names_both_instances() {
    let tmp = tempfile::tempdir().unwrap();
    let out = bench(&["list-problems"], tmp.path());
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.contains("eq_selection"));
    assert!(text.contains("lin_constrained"));
}

#[test]
fn zero_budget_gives_header_plus_initial_row() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(
        tmp.path(),
        "cfg.json",
        r#"{"problem":{"kind":"eq_selection","nu":1},
            "algorithm":{"kind":"det_eg","delta":0.1},
            "seed":1,"epoch_budget":0,
            "output":{"csv_path":"zero.csv"}}"#,
    );
    let out = bench(&["run", "--config", &cfg], tmp.path());
    assert!(out.status.success());
    let text = std::fs::read_to_string(tmp.path().join("zero.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2, "header plus the initial row");
    assert!(lines[1].starts_with("0.0000000000000000e0"));
}
