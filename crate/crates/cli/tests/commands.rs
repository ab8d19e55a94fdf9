use std::process::{Command, Output};

use serde_json::Value;

fn slant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slant")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = slant(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn coords(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

#[test]
fn associative_plane() {
    let v = json(&["plane", "e1", "e2", "e3", "--format", "json"]);
    assert!((v["phi"].as_f64().unwrap() - 1.0).abs() < 1e-15);
    assert_eq!(v["classification"], "associative");
}

#[test]
fn totally_real_plane() {
    let v = json(&["plane", "e1", "e2", "e7", "--format", "json"]);
    assert_eq!(v["phi"].as_f64().unwrap(), 0.0);
    assert_eq!(coords(&v["associator"]), vec![0.0, 0.0, 0.0, -2.0, 0.0, 0.0, 0.0]);
    assert_eq!(v["classification"], "totally_real");
    assert!(v["reduction_residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn dependent_plane_is_a_usage_error() {
    let out = slant(&["plane", "e1", "e2", "1,1,0,0,0,0,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("linearly dependent"));
    assert_eq!(slant(&["plane", "e1", "e2", "e9"]).status.code(), Some(2));
}

#[test]
fn small_sphere_in_associative_plane() {
    let v = json(&["sphere", "e1", "e2", "e3", "--radius", "0.5", "--format", "json"]);
    let a = v["report"]["angle_rad"].as_f64().unwrap();
    assert!((a - std::f64::consts::FRAC_PI_3).abs() < 1e-9);
}

#[test]
fn admissible_centers_are_listed() {
    let v = json(&["sphere", "e1", "e2", "e7", "--radius", "0.5", "--format", "json"]);
    let list = v["admissible_centers"].as_array().unwrap();
    assert_eq!(list.len(), 2);
    let k = 3f64.sqrt() / 2.0;
    let c0 = coords(&list[0]["center"]);
    let c1 = coords(&list[1]["center"]);
    assert!((c0[3] + k).abs() < 1e-15 && (c1[3] - k).abs() < 1e-15);
    assert!(list.iter().all(|x| x["report"]["is_slant"] == true));
}

#[test]
fn off_axis_center_is_not_slant() {
    let c = format!("0,0,0,0,{},0,0", 3f64.sqrt() / 2.0);
    let v = json(&["sphere", "e1", "e2", "e7", "--radius", "0.5", "--center", &c, "--format", "json"]);
    assert_eq!(v["report"]["classification"], "not_slant");
}

#[test]
fn inconsistent_center_is_rejected() {
    let out = slant(&["sphere", "e1", "e2", "e7", "--radius", "0.5", "--center", "0,0,0,0,1,0,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn family_and_explicit_landmark_agree() {
    let a = json(&["orbit", "--family", "0", "--format", "json"]);
    let p = format!("0,0,{0},0,{0},{0},0", 1.0 / 3f64.sqrt());
    let b = json(&["orbit", &p, "--format", "json"]);
    assert!(a["H_norm"].as_f64().unwrap() < 1e-10);
    assert!(a["K"].as_f64().unwrap().abs() < 1e-8);
    let (sa, sb) = (a["slant_cos"].as_f64().unwrap(), b["slant_cos"].as_f64().unwrap());
    assert!((sa - sb).abs() < 1e-12);
    assert!((sa - 1.0).abs() < 1e-12);
}

#[test]
fn degenerate_orbit_lists_moduli() {
    let out = slant(&["orbit", "e2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("γ = 0e0"));
}

#[test]
fn orbit_mesh_csv() {
    let out = slant(&["orbit", "--family", "0.3", "--mesh", "4", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 17);
    for line in text.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        let n: f64 = v[2..].iter().map(|x| x * x).sum();
        assert!((n - 1.0).abs() < 1e-12);
    }
}

#[test]
fn small_scan_shape_and_summary() {
    let out = slant(&["scan", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 17);
    assert!(text.starts_with("x1,a,b,c,slant_cos,"));
    let summary: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(summary["summary"]["n_rows"], 16);
}

#[test]
fn scan_at_zero_a_has_zero_slant_cos() {
    let out = slant(&["scan", "--n", "4", "--a", "0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 64);
    for r in rows {
        let cols: Vec<&str> = r.split(',').collect();
        assert_eq!(cols[4].parse::<f64>().unwrap().abs(), 0.0, "{r}");
    }
}

#[test]
fn malformed_grid_is_rejected() {
    assert_eq!(slant(&["scan", "--a", "0:1:1"]).status.code(), Some(2));
    assert_eq!(slant(&["scan", "--a", "0:x:3"]).status.code(), Some(2));
    assert_eq!(slant(&["scan", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn verify_only_one_suite() {
    let v = json(&["verify", "--only", "octonion_core", "--format", "json"]);
    let suites = v["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 1);
    assert_eq!(suites[0]["name"], "octonion_core");
    assert_eq!(v["passed"], true);
}

#[test]
fn looser_slant_threshold_still_passes() {
    let v = json(&["verify", "--only", "slant_spheres", "--tolerance", "slant_spread=1e-3", "--format", "json"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["tolerances"]["slant_spread"], 1e-3);
}

#[test]
fn unknown_tolerance_is_a_usage_error() {
    let out = slant(&["verify", "--tolerance", "bogus=1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(slant(&["verify", "--only", "nope"]).status.code(), Some(2));
}

#[test]
fn failing_invariants_exit_with_one_and_are_named() {
    let out = slant(&["verify", "--only", "torus_orbits", "--samples", "20", "--tolerance", "slant=0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("failed invariant: torus_orbits/"));
}

#[test]
fn table_quadruples() {
    let v = json(&["table", "--audit", "--format", "json"]);
    let products = v["products"].as_array().unwrap();
    assert_eq!(products.len(), 42);
    assert!(products.iter().any(|q| q == &serde_json::json!([1, 2, 3, 1])));
    assert_eq!(v["derivation_audit"].as_array().unwrap().len(), 14);
}

#[test]
fn out_flag_writes_the_file() {
    let dir = std::env::temp_dir().join(format!("slant-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    let out = slant(&["table", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.starts_with("i,j,k,sign\n1,2,3,1\n"));
    std::fs::remove_dir_all(dir).unwrap();
}
