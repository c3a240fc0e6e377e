use std::process::{Command, Output};

use bvk_cli::output::parse_json;

fn bvk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bvk"))
        .args(args)
        .env_remove("BVK_TOL")
        .output()
        .expect("binary runs")
}

fn without_timing(json: &[u8]) -> String {
    let mut file = parse_json(std::str::from_utf8(json).unwrap()).unwrap();
    for r in &mut file.reports {
        r.wall_time_ms = 0.0;
    }
    serde_json::to_string_pretty(&file).unwrap()
}

#[test]
fn algebra_passes_and_is_deterministic() {
    let a = bvk(&["--suite", "algebra", "--seed", "7"]);
    let b = bvk(&["--suite", "algebra", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(without_timing(&a.stdout), without_timing(&b.stdout));
    let c = bvk(&["--suite", "algebra", "--seed", "8"]);
    assert_ne!(without_timing(&a.stdout), without_timing(&c.stdout));
}

#[test]
fn exit_codes() {
    assert_eq!(bvk(&["--suite", "algebra", "--tol", "1e-30"]).status.code(), Some(1));
    assert_eq!(bvk(&["--suite", "nope"]).status.code(), Some(2));
    assert_eq!(bvk(&["--suite", "algebra", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(bvk(&["--suite", "algebra", "--f0", "exp(z1)"]).status.code(), Some(2));
    assert_eq!(bvk(&["--suite", "schrodinger", "--f0", "exp(z1"]).status.code(), Some(2));
    assert_eq!(bvk(&["--grid", "x=1:0:3"]).status.code(), Some(2));
}

#[test]
fn tolerance_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_bvk"))
        .args(["--suite", "algebra"])
        .env("BVK_TOL", "1e-30")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let bad = Command::new(env!("CARGO_BIN_EXE_bvk"))
        .args(["--suite", "algebra"])
        .env("BVK_TOL", "small")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn csv_output_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("algebra.csv");
    let out = bvk(&["--suite", "algebra", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, bvk_cli::output::CSV_HEADER);
    let rows: Vec<_> = rdr.records().collect::<Result<_, _>>().unwrap();
    assert_eq!(rows.len(), 21);
    assert!(rows.iter().all(|r| &r[8] == "true"));
}

#[test]
fn user_inputs() {
    let ok = bvk(&["--suite", "schrodinger", "--f0", "cosh(z1)", "--w", "cosh(z1)"]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    let file = parse_json(std::str::from_utf8(&ok.stdout).unwrap()).unwrap();
    assert!(file.reports.iter().any(|r| r.case_id == "split:cosh(z1):user"));

    let not_solution = bvk(&["--suite", "schrodinger", "--f0", "exp-z1", "--w", "z1"]);
    assert_eq!(not_solution.status.code(), Some(1));

    let vanishing = bvk(&["--suite", "schrodinger", "--f0", "z1"]);
    assert_eq!(vanishing.status.code(), Some(1));

    let pair = bvk(&["--suite", "pseudoanalytic", "--pair", "exp(z1), I2*exp(-z1)"]);
    assert_eq!(pair.status.code(), Some(0), "{}", String::from_utf8_lossy(&pair.stderr));
}
