use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qdamp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdamp"))
        .args(args)
        .output()
        .expect("run qdamp")
}

fn write_config(dir: &Path, json: &str) -> String {
    let path = dir.join("config.json");
    fs::write(&path, json).unwrap();
    path.to_string_lossy().into_owned()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

#[test]
fn verify_is_deterministic_and_passes() {
    let a = qdamp(&["verify"]);
    let b = qdamp(&["verify"]);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stderr)
    );
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    assert_eq!(doc["all_passed"], true);
    assert_eq!(doc["failed"], 0);
    let names: Vec<&str> = doc["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["name"].as_str().unwrap())
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn impossible_tolerance_fails_with_exit_one() {
    let out = qdamp(&["verify", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert_eq!(doc["all_passed"], false);
    assert!(doc["failed"].as_u64().unwrap() > 0);
}

#[test]
fn tiny_dimension_skips_instead_of_failing() {
    let out = qdamp(&["verify", "--dim", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let skipped: Vec<_> = doc["records"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] == "skipped")
        .collect();
    assert!(!skipped.is_empty());
    assert!(skipped.iter().all(|r| r["reason"].is_string()));
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_config(dir.path(), r#"{"dimension": 8}"#);
    let out = qdamp(&["verify", "--config", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dimension"));

    let mismatch = write_config(dir.path(), r#"{"command": "squeeze"}"#);
    assert_eq!(
        qdamp(&["verify", "--config", &mismatch]).status.code(),
        Some(2)
    );

    assert_eq!(
        qdamp(&["evolve", "--config", "/nonexistent/x.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qdamp(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qdamp(&["verify", "--tol", "-1"]).status.code(), Some(2));
}

#[test]
fn evolve_matches_closed_forms() {
    let dir = tempfile::tempdir().unwrap();
    let modes: Vec<String> = (0..10)
        .map(|k| format!(r#"{{"kappa": "k{k}", "omega": 1.0, "gamma": 1.0}}"#))
        .collect();
    let cfg = write_config(
        dir.path(),
        &format!(
            r#"{{"command": "evolve", "modes": [{}], "time_grid": {{"t_start": 0, "t_end": 1, "steps": 4}}}}"#,
            modes.join(",")
        ),
    );
    let out = qdamp(&["evolve", "--config", &cfg]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let (header, rows) = csv_rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(header[..3], ["t", "overlap", "total_N_A"]);
    assert_eq!(header.len(), 13);
    assert_eq!(rows.len(), 5);
    let last = rows.last().unwrap();
    assert_eq!(last[0], 1.0);
    assert!((last[1] - 0.013_065_1).abs() < 5e-8);
    assert!((last[3] - 1.381_098).abs() < 5e-7);
    assert!((last[2] - 10.0 * last[3]).abs() < 1e-12);
}

#[test]
fn evolve_json_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("series.json");
    let out = qdamp(&[
        "evolve",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["columns"][1], "overlap");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 101);
    let row = &doc["rows"][10];
    assert!((row[1].as_f64().unwrap() - 1.0 / 1.0f64.cosh()).abs() < 1e-15);
}

#[test]
fn classical_series_tracks_closed_form() {
    let out = qdamp(&["classical"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(header, ["t", "z_numeric", "z_analytic", "envelope"]);
    assert_eq!(rows.len(), 10_001);
    for r in &rows {
        assert!((r[1] - r[2]).abs() <= 1e-8);
        assert!((r[3] - (-0.25 * r[0]).exp()).abs() <= 1e-14);
    }
}

#[test]
fn classical_rejects_overdamped_oscillator() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"oscillator": {"gamma": 5.0}}"#);
    assert_eq!(
        qdamp(&["classical", "--config", &cfg]).status.code(),
        Some(2)
    );
}

#[test]
fn squeeze_rows() {
    let out = qdamp(&["squeeze"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(header[3], "vacuum_overlap");
    assert_eq!(header.last().unwrap(), "amp_16");
    assert_eq!(rows.len(), 7);
    for r in &rows {
        assert!(r[1] <= 1e-8 && r[2] <= 1e-8, "{r:?}");
        let zeta: f64 = r[0];
        assert!((r[3] - 1.0 / zeta.cosh().sqrt()).abs() < 1e-10);
    }
    let unit = rows.iter().find(|r| r[0] == 1.0).unwrap();
    assert!((unit[3] - 0.805_018).abs() < 5e-7);
}
