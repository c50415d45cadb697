use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_symtriad"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = run(&a);
    assert!(out.status.success() || out.status.code() == Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn triads_list_has_sixteen_entries() {
    let v = json(&["triads", "list"]);
    assert_eq!(v.as_array().unwrap().len(), 16);
    let out = run(&["triads", "list"]);
    assert_eq!(stdout(&out).lines().count(), 16);
}

#[test]
fn triads_show_row_nine() {
    let v = json(&["triads", "show", "e6-f4-dual"]);
    assert_eq!(v["ambient_dim"], 26);
    let roots = v["roots"].as_array().unwrap();
    let find = |c: [i64; 2]| roots.iter().find(|r| r["coeffs"] == serde_json::json!(c)).unwrap().clone();
    assert_eq!((find([1, 0])["mV"].clone(), find([1, 0])["mH"].clone()), (8.into(), 0.into()));
    assert_eq!(find([0, 1])["mH"], 8);
    assert_eq!(find([1, 1])["mH"], 8);
}

#[test]
fn unknown_triad_is_usage_error() {
    let out = run(&["triads", "show", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nope"));
}

#[test]
fn analyze_theorem_c_point() {
    let v = json(&["analyze", "su3-so3-dual", "--z", "pi/3,-pi/6"]);
    assert_eq!(v["minimal"], true);
    assert_eq!(v["austere"], false);
    assert_eq!(v["dim_orbit"], 3);
    assert_eq!(v["primary_tag"], "C");
}

#[test]
fn analyze_totally_geodesic_point() {
    let v = json(&["analyze", "su3-so3-dual", "--z", "0,0"]);
    assert_eq!(v["totally_geodesic"], true);
    assert_eq!(v["dim_orbit"], 2);
}

#[test]
fn analyze_generic_point() {
    let v = json(&["analyze", "su3-so3-dual", "--z", "0.1,0.2"]);
    assert_eq!(v["minimal"], false);
    assert!(v["Z"][0]["radians"].is_number());
}

#[test]
fn analyze_rejects_bad_points() {
    assert_eq!(run(&["analyze", "su3-so3-dual", "--z", "0.1"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "su3-so3-dual", "--z", "pi/"]).status.code(), Some(2));
}

#[test]
fn minimal_row_one() {
    let v = json(&["minimal", "su3-so3-dual"]);
    let sols = v["solutions"].as_array().unwrap();
    assert_eq!(sols.len(), 7);
    let mut dims: Vec<i64> = sols.iter().map(|s| s["report"]["dim_orbit"].as_i64().unwrap()).collect();
    dims.sort();
    assert_eq!(dims, vec![0, 0, 0, 2, 2, 2, 3]);
    assert!(v.get("diagnostics").is_none());
}

#[test]
fn minimal_g2_dual_covers_listed_points() {
    let v = json(&["minimal", "g2xg2-dual"]);
    let sols = v["solutions"].as_array().unwrap();
    let has = |z: Value, dim: i64| sols.iter().any(|s| s["Z"] == z && s["report"]["dim_orbit"] == dim);
    assert!(has(serde_json::json!([{"pi_rational": [0, 1]}, {"pi_rational": [1, 2]}]), 0));
    assert!(has(serde_json::json!([{"pi_rational": [1, 3]}, {"pi_rational": [-1, 2]}]), 6));
}

#[test]
fn minimal_from_user_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cp2.json");
    let triad = r#"{"name": "projective plane", "rank": 1,
        "roots": [{"coeffs": [1], "mV": 2, "mH": 0}, {"coeffs": [2], "mV": 1, "mH": 0}],
        "ambient_dim": 4}"#;
    std::fs::write(&path, triad).unwrap();
    let v = json(&["minimal", path.to_str().unwrap(), "--verbose"]);
    assert!(!v["solutions"].as_array().unwrap().is_empty());
    assert!(v["diagnostics"].as_array().is_some());
    let out = run(&["figure", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_user_file_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"name": "x", "rank": 1, "roots": [{"coeffs": [1], "mV": 0, "mH": 0}]}"#).unwrap();
    assert_eq!(run(&["minimal", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_single_tables() {
    let out = run(&["verify", "--tables", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = run(&["verify", "--tables", "6"]);
    assert!(stdout(&out).contains("Table 6"));
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn verify_exit_code_tracks_results() {
    let v = json(&["verify", "--all"]);
    let out = run(&["verify", "--all"]);
    let expected = if v["pass"] == true { 0 } else { 1 };
    assert_eq!(out.status.code(), Some(expected));
    assert_eq!(v["rows_total"], 75);
    assert_eq!(v["tables"].as_array().unwrap().len(), 11);
}

#[test]
fn verify_examples_and_austere_points() {
    let v = json(&["verify", "--examples", "3"]);
    assert_eq!(v["checks"][0]["lines"].as_array().unwrap().len(), 13);
    let out = run(&["verify", "--prop41"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_unknown_table() {
    assert_eq!(run(&["verify", "--tables", "3"]).status.code(), Some(2));
}

#[test]
fn figure_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for p in [&a, &b] {
        let out = run(&["figure", "su3-so3-dual", "-o", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let sa = std::fs::read(&a).unwrap();
    assert_eq!(sa, std::fs::read(&b).unwrap());
    let text = String::from_utf8(sa).unwrap();
    assert!(text.starts_with("<?xml"));
    assert_eq!(text.matches("<circle").count(), 7);
    let bare = stdout(&run(&["figure", "su3-so3-dual", "--bare"]));
    assert_eq!(bare.matches("<circle").count(), 0);
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(run(&["--tol", "0", "triads", "list"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}
