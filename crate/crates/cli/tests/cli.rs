use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn qdiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdiff")).args(args).output().expect("binary runs")
}

fn qdiff_with(args: &[&str], fixtures: &[(&str, &str)]) -> Output {
    let mut all: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    for (flag, name) in fixtures {
        all.push(flag.to_string());
        all.push(fixture(name).display().to_string());
    }
    let refs: Vec<&str> = all.iter().map(String::as_str).collect();
    qdiff(&refs)
}

fn error_record(out: &Output) -> Value {
    let line = String::from_utf8_lossy(&out.stderr);
    serde_json::from_str(line.trim()).expect("stderr is one JSON error record")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn check_accepts_m3_with_its_inner_differential() {
    for source in [("--differential", "m3_d.json"), ("--inner", "m3_e.json")] {
        let out = qdiff_with(&["check", "--N", "3", "--json"], &[("--algebra", "m3.json"), source]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let v = stdout_json(&out);
        assert_eq!(v["laws_hold"], true);
        assert_eq!(v["report"]["dims"], serde_json::json!([3, 3, 3, 3, 3, 3, 3, 3, 3]));
        assert_eq!(v["report"]["unit_closed"], true);
    }
}

#[test]
fn check_rejects_a_differential_breaking_leibniz() {
    let out = qdiff_with(
        &["check", "--N", "3"],
        &[("--algebra", "truncated_poly.json"), ("--differential", "corrupted_d.json")],
    );
    assert_eq!(out.status.code(), Some(1));
    let kind = error_record(&out)["error"]["kind"].as_str().unwrap().to_string();
    assert!(kind == "LeibnizViolation" || kind == "UnitNotClosed", "{kind}");
}

#[test]
fn envelope_of_c2_prints_dimension_line() {
    let out = qdiff_with(&["envelope", "--N", "3", "--max-degree", "5"], &[("--algebra", "c2.json")]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("2 2 4 6 10 16"));
    assert_eq!(lines.next(), Some("isomorphic true"));
}

#[test]
fn homology_on_corrupted_differential_reports_nilpotency_violation() {
    let out = qdiff_with(
        &["homology", "--N", "3"],
        &[("--algebra", "truncated_poly.json"), ("--differential", "corrupted_d.json")],
    );
    assert_ne!(out.status.code(), Some(0));
    let rec = error_record(&out);
    assert_eq!(rec["error"]["kind"], "NilpotencyViolation");
    assert!(out.stdout.is_empty());
}

#[test]
fn homology_of_m3_agrees_with_the_library() {
    let out = qdiff_with(&["homology", "--N", "3", "--json"], &[("--algebra", "m3.json"), ("--inner", "m3_e.json")]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let got: Vec<(u64, u64, u64)> = v["cohomology"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["k"].as_u64().unwrap(), c["n"].as_u64().unwrap(), c["dim"].as_u64().unwrap()))
        .collect();

    use qdiff_core::{cohomology_table, fixtures, inner_differential, QMode};
    let mode = QMode::RootOfUnity(3);
    let m3 = fixtures::matrix_units(3, mode);
    let qda = inner_differential(&m3, &fixtures::cyclic_shift(3, &[1, 1, 1], mode), 8).unwrap();
    let want: Vec<(u64, u64, u64)> = cohomology_table(&qda.complex_view().unwrap())
        .iter()
        .map(|h| (h.k as u64, h.n as u64, h.dim as u64))
        .collect();
    assert_eq!(got, want);
}

#[test]
fn hochschild_of_dual_numbers_follows_the_periodic_pattern() {
    let out = qdiff_with(&["hochschild", "--N", "3", "--max-degree", "6", "--json"], &[("--algebra", "dual_numbers.json")]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let dims: Vec<(u64, u64, u64)> = v["cohomology"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["n"].as_u64().unwrap() <= 4)
        .map(|c| (c["k"].as_u64().unwrap(), c["n"].as_u64().unwrap(), c["dim"].as_u64().unwrap()))
        .collect();
    let row = |k| dims.iter().filter(|c| c.0 == k).map(|c| c.2).collect::<Vec<_>>();
    assert_eq!(row(1), vec![2, 0, 1, 1, 0]);
    assert_eq!(row(2), vec![2, 1, 0, 1, 1]);
}

#[test]
fn hexagon_reports_exactness_for_m3() {
    let out = qdiff_with(&["hexagon", "--N", "3", "--json"], &[("--algebra", "m3.json"), ("--inner", "m3_e.json")]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["exact"], true);
    assert_eq!(v["hexagons"].as_array().unwrap().len(), 1);
    assert_eq!(v["sequences"].as_array().unwrap().len(), 3);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<PathBuf> = (0..2).map(|i| dir.path().join(format!("r{i}.json"))).collect();
    for p in &paths {
        let out = qdiff_with(
            &["homology", "--N", "3", "--out", p.to_str().unwrap()],
            &[("--algebra", "m3.json"), ("--differential", "m3_d.json")],
        );
        assert!(out.status.success());
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
}

#[test]
fn missing_input_is_an_io_error_record() {
    let out = qdiff(&["envelope", "--N", "3", "--algebra", "/nonexistent/algebra.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_record(&out)["error"]["kind"], "Io");
}

#[test]
fn window_below_n_is_rejected() {
    let out = qdiff_with(&["homology", "--N", "4", "--max-degree", "3"], &[("--algebra", "m3.json"), ("--inner", "m3_e.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_record(&out)["error"]["kind"], "IllFormed");
}

#[test]
fn reproduce_prints_a_matrix_row_per_criterion() {
    let out = qdiff(&["reproduce", "--only", "1,7"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| l.contains("PASS") || l.contains("FAIL")).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.contains("PASS")));
    assert!(text.contains("2/2 passed"));
}
