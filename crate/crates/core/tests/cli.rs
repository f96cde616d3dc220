use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const TWO_MASS: &str = r#"{"psi": [[1, 0]], "masses": [[1.5, 0, 0.3], [-1.25, 0, 0.1]], "precision_bits": 256}"#;

fn szego(dir: &Path, args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_szego-lab"));
    cmd.current_dir(dir).args(args);
    match threads {
        Some(t) => cmd.env("SZEGO_LAB_THREADS", t),
        None => cmd.env_remove("SZEGO_LAB_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn setup(manifest: &str) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("two.json"), TWO_MASS).unwrap();
    fs::write(dir.path().join("run.json"), manifest).unwrap();
    dir
}

fn error_of(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stderr);
    let line = text.lines().find(|l| l.starts_with('{')).expect("error json on stderr");
    serde_json::from_str(line).unwrap()
}

#[test]
fn opuc_writes_rows_and_reproducibility() {
    let dir = setup(r#"{"measure_file": "two.json", "n_grid": [8, 16, 24]}"#);
    let out = szego(dir.path(), &["opuc", "--manifest", "run.json", "--out", "o"], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.path().join("o/certificates.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,tau_n,eta_n,target,tau_error,eta_error,tau_bits,eta_bits"
    );
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "8");
    // independent value from a 50-digit computation
    assert!((first[1].parse::<f64>().unwrap() - 0.546946).abs() < 1e-6);
    let report: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("o/report.json")).unwrap()).unwrap();
    assert_eq!(report["command"], "opuc");
    assert_eq!(report["reproducibility"]["precision_bits"], 256);
    assert_eq!(report["rows"].as_array().unwrap().len(), 3);
    assert!(report["reproducibility"]["version"].as_str().unwrap().starts_with("szego-lab v"));
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = setup(r#"{"n_grid": [4, 8], "instances": 3, "seed": 11}"#);
    let a = szego(dir.path(), &["vs-bound", "--manifest", "run.json", "--out", "a"], None);
    let b = szego(dir.path(), &["vs-bound", "--manifest", "run.json", "--out", "b"], Some("1"));
    assert!(a.status.success() && b.status.success());
    for f in ["certificates.csv", "report.json"] {
        assert_eq!(
            fs::read(dir.path().join("a").join(f)).unwrap(),
            fs::read(dir.path().join("b").join(f)).unwrap(),
            "{f} differs"
        );
    }
    let c = szego(dir.path(), &["vs-bound", "--manifest", "run.json", "--out", "c", "--seed", "12"], None);
    assert!(c.status.success());
    assert_ne!(
        fs::read(dir.path().join("a/certificates.csv")).unwrap(),
        fs::read(dir.path().join("c/certificates.csv")).unwrap()
    );
}

#[test]
fn malformed_measure_exits_2_naming_the_field() {
    let dir = setup(r#"{"measure_file": "bad.json"}"#);
    fs::write(dir.path().join("bad.json"), r#"{"masses": [[1.5, 0]]}"#).unwrap();
    let out = szego(dir.path(), &["opuc", "--manifest", "run.json", "--out", "o"], None);
    assert_eq!(out.status.code(), Some(2));
    let err = error_of(&out);
    assert_eq!(err["error"]["exit_code"], 2);
    assert!(err["error"]["message"].as_str().unwrap().contains("masses"));
}

#[test]
fn missing_measure_and_bad_flags_exit_2() {
    let dir = setup("{}");
    let out = szego(dir.path(), &["opuc", "--manifest", "run.json"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(error_of(&out)["error"]["message"].as_str().unwrap().contains("measure_file"));
    let out = szego(dir.path(), &["vs-bound", "--oversample", "2"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = szego(dir.path(), &["vs-bound", "--manifest", "run.json"], Some("zero"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn schedule_violation_exits_4() {
    let dir = setup(r#"{"measure_file": "two.json", "n_grid": [8, 16]}"#);
    let out = szego(dir.path(), &["pipeline", "--manifest", "run.json", "--out", "o"], None);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(error_of(&out)["error"]["kind"], "schedule_violation");
}

#[test]
fn pipeline_residue_and_log_condition() {
    let dir = setup(r#"{"measure_file": "two.json", "n_grid": [32, 64]}"#);
    let out = szego(dir.path(), &["pipeline", "--manifest", "run.json", "--out", "p"], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summary: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["all_dominated"], true);
    assert_eq!(summary["all_schwarz_pass"], true);
    let csv = fs::read_to_string(dir.path().join("p/certificates.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);

    fs::write(dir.path().join("r.json"), r#"{"measure_file": "two.json"}"#).unwrap();
    let out = szego(dir.path(), &["residue-check", "--manifest", "r.json", "--out", "r"], None);
    assert!(out.status.success());
    let summary: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(summary["max_abs_diff"].as_f64().unwrap() < 1e-8);

    let out = szego(dir.path(), &["log-condition", "--manifest", "r.json", "--out", "l"], None);
    assert!(out.status.success());
    let summary: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["passes"], true);
}

#[test]
fn besov_sweep_with_fixed_zeros() {
    let dir = setup(r#"{"zeros_file": "zeros.json", "epsilons": [1.0, 0.5]}"#);
    fs::write(dir.path().join("zeros.json"), "[[0.5, 0.0], [0.0, -0.9]]").unwrap();
    let out = szego(dir.path(), &["besov", "--manifest", "run.json", "--out", "b"], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.path().join("b/certificates.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].contains("besov1_ratio"));
    assert!(rows[1].starts_with("1,file,2,"));
}
