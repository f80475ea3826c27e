use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn whvf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_whvf")).args(args).env_remove("WHVF_THREADS").output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn linear_center_report() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "center.sys", "# harmonic oscillator\ndx/dt = y\ndy/dt = -x\n");
    let v = json(&whvf(&["classify", "--json", path(&file)]));
    assert_eq!(v["schema"], 1);
    assert_eq!(v["verdict"]["outcome"]["kind"], "center");
    assert_eq!(v["family"]["id"], "s11-d1");
    assert_eq!(v["input"]["line"], 2);
}

#[test]
fn nilpotent_focus_multiplier() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "focus.sys", "dx/dt = y\ndy/dt = -2*x^5 + x^2*y\n");
    let v = json(&whvf(&["verify", "--json", path(&file)]));
    assert_eq!(v["family"]["id"], "s13-d3");
    let numeric = &v["verdict"]["numeric"];
    let estimate = numeric["multiplier"]["value"].as_f64().unwrap();
    let closed = numeric["multiplier_expected"].as_f64().unwrap();
    assert!((closed - 1.547_61).abs() < 1e-4, "{closed}");
    assert!((estimate - closed).abs() < 1e-6 * closed, "{estimate} vs {closed}");
}

#[test]
fn json_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "cusp.sys", "dx/dt = y\ndy/dt = x^2\n");
    let a = whvf(&["classify", "--json", path(&file)]);
    let b = whvf(&["classify", "--json", path(&file)]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["verdict"]["outcome"]["kind"], "cusp");
}

#[test]
fn timings_are_opt_in() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "center.sys", "dx/dt = y\ndy/dt = -x\n");
    assert!(json(&whvf(&["classify", "--json", path(&file)])).get("timings").is_none());
    assert!(json(&whvf(&["classify", "--json", "--timings", path(&file)]))["timings"]["classify_ms"].is_number());
}

#[test]
fn parse_errors_exit_one_with_position() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "bad.sys", "dx/dt = y\ndy/dt = 2x\n");
    let out = whvf(&["classify", path(&file)]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2, column 10"), "{err}");
}

#[test]
fn strict_flags_inconclusive_integral() {
    let dir = TempDir::new().unwrap();
    // a circle integral of order 1e-8: above the zero tolerance, below the focus threshold
    let file = write(&dir, "near.sys", "dx/dt = -y^3 + 0.00000001*x^3\ndy/dt = x^3 + 0.00000001*y^3\n");
    let relaxed = whvf(&["classify", "--json", path(&file)]);
    assert_eq!(json(&relaxed)["verdict"]["outcome"]["kind"], "inconclusive");
    assert_eq!(whvf(&["classify", "--strict", path(&file)]).status.code(), Some(2));
    let loose = whvf(&["classify", "--strict", "--tol", "1e-6", "--json", path(&file)]);
    assert_eq!(json(&loose)["verdict"]["outcome"]["kind"], "global_center");
}

#[test]
fn portrait_writes_csv_and_svg() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "center.sys", "dx/dt = y\ndy/dt = -x - x^2\n");
    let csv = dir.path().join("orbits.csv");
    let svg = dir.path().join("orbits.svg");
    let out = whvf(&[
        "portrait",
        path(&file),
        "--out",
        path(&csv),
        "--svg",
        path(&svg),
        "--radii",
        "0.1,0.2",
        "--count",
        "3",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut reader = csv::Reader::from_path(&csv).unwrap();
    assert_eq!(reader.headers().unwrap(), vec!["orbit_id", "t", "x", "y", "winding"]);
    let ids: std::collections::BTreeSet<String> =
        reader.records().map(|r| r.unwrap()[0].to_string()).collect();
    assert_eq!(ids.len(), 6);
    assert_eq!(std::fs::read_to_string(&svg).unwrap().matches("<polyline").count(), 6);
}

#[test]
fn sweep_is_seeded_and_agrees() {
    let a = whvf(&["sweep", "s13-d3", "--samples", "12", "--seed", "7", "--json", "--strict"]);
    let b = whvf(&["sweep", "s13-d3", "--samples", "12", "--seed", "7", "--json", "--threads", "1"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["sweeps"][0]["agreements"], 12);
    assert_eq!(v["sweeps"][0]["mismatches"], 0);
}

#[test]
fn unknown_family_is_an_error() {
    let out = whvf(&["sweep", "s99-d9"]);
    assert_eq!(out.status.code(), Some(1));
}
