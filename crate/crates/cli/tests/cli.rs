use std::fs;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn tqd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tqd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (Value, i32) {
    let out = tqd(args);
    let code = out.status.code().expect("exit code");
    let body = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}; stderr {}", String::from_utf8_lossy(&out.stderr)));
    (body, code)
}

#[test]
fn double_semion_theta_table() {
    let (v, code) = report(&["theory", "tqd", "--N", "2", "--n", "1"]);
    assert_eq!(code, 0);
    let mut labels: Vec<&str> = v["theta"].as_object().unwrap().values().map(|x| x.as_str().unwrap()).collect();
    labels.sort();
    assert_eq!(labels, vec!["-i", "1", "1", "i"]);
    assert_eq!(v["modular"], json!(true));
}

#[test]
fn degeneracy_from_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("ds_3x3.json");
    fs::write(&spec, r#"{"type": "ds", "Lx": 3, "Ly": 3}"#).unwrap();
    let (v, code) = report(&["verify", "degeneracy", "--spec", spec.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({ "logical_dimension": 4 }));

    let out = tqd(&["verify", "degeneracy", "--spec", spec.to_str().unwrap(), "--expect", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invalid_params_and_specs_exit_two() {
    let out = tqd(&["model", "build", "--N", "2,2", "--nij", "1,2,2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n_12"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"type": "tqd", "N": [6], "Lx": 3, "Ly": 3}"#).unwrap();
    assert_eq!(tqd(&["model", "build", "--spec", bad.to_str().unwrap()]).status.code(), Some(2));
    fs::write(&bad, "{ not json").unwrap();
    assert_eq!(tqd(&["verify", "commuting", "--spec", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(tqd(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(tqd(&["verify", "condensation-equality", "--model", "spt"]).status.code(), Some(2));
}

#[test]
fn model_build_writes_to_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("model.json");
    let status = tqd(&["model", "build", "--model", "tc", "--N", "4", "--L", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(status.status.code(), Some(0));
    assert!(status.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["group"]["dims"].as_array().unwrap().len(), 18);
    assert_eq!(v["Lx"], json!(3));
}

#[test]
fn verify_checks_pass_on_tqd() {
    for check in ["commuting", "scalar", "condensation-equality"] {
        let (_, code) = report(&["verify", check, "--N", "2,2", "--n", "1,1", "--nij", "1,2,1", "--json"]);
        assert_eq!(code, 0, "{check}");
    }
}

#[test]
fn anyon_extraction_matches_target() {
    let (v, code) = report(&["anyons", "extract"]);
    assert_eq!(code, 0);
    assert_eq!(v["theta"], json!({ "s": "1/4", "sbar": "3/4" }));
    assert_eq!(v["iso_match"], json!(true));
}

#[test]
fn kmatrix_reports() {
    let (v, code) = report(&["kmatrix", "build", "--N", "2,2", "--n", "1,1", "--nij", "1,2,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["census"], json!({ "0/1": 4, "1/4": 6, "3/4": 6 }));
    assert_eq!(v["group"], json!([4, 4]));
    assert_eq!(v["signature"], json!(0));

    // Transpose of the basis change taking the n12 = 1 K-matrix to block form.
    let (v, code) = report(&[
        "kmatrix", "transform", "--N", "2,2", "--nij", "1,2,1", "--W", "1,0,0,2;0,1,2,0;0,0,0,1;0,0,-1,0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["K"], json!([[0, 4, 0, 0], [4, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]));

    let (v, code) = report(&["kmatrix", "condense-check", "--N", "2,4", "--n", "1,3", "--nij", "1,2,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["recovers_tqd"], json!(true));

    assert_eq!(tqd(&["kmatrix", "transform", "--K", "1,0;0,1", "--W", "2,0;0,1"]).status.code(), Some(2));
}

#[test]
fn theory_subcommands() {
    let (v, code) = report(&["theory", "fusion-group", "--N", "3", "--n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["snf"], json!([9]));
    assert_eq!(v["cocycle"], json!([9]));

    let (v, code) = report(&["theory", "stack", "--N", "2,2", "--n", "1,1", "--nij", "1,2,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["isomorphic"], json!(true));

    let (v, _) = report(&["theory", "cocycle", "--N", "2", "--n", "1", "--g", "1", "--h", "1", "--k", "1"]);
    assert_eq!(v["omega"], json!("1/2"));

    let dir = tempfile::tempdir().unwrap();
    let ds = dir.path().join("ds.json");
    let tc = dir.path().join("tc.json");
    fs::write(&ds, serde_json::to_string(&report(&["theory", "tqd"]).0["theory"]).unwrap()).unwrap();
    fs::write(&tc, serde_json::to_string(&report(&["theory", "tqd", "--N", "2"]).0["theory"]).unwrap()).unwrap();

    let (v, code) = report(&["theory", "iso", "--theory", ds.to_str().unwrap(), "--with", tc.to_str().unwrap()]);
    assert_eq!((v["isomorphic"].clone(), code), (json!(false), 1));

    let (v, code) = report(&["theory", "lagrangian", "--theory", tc.to_str().unwrap()]);
    assert_eq!((v["count"].clone(), code), (json!(2), 0));

    let (v, code) = report(&["theory", "condense", "--theory", tc.to_str().unwrap(), "--bosons", "1,0"]);
    assert_eq!((v["condensed"]["size"].clone(), code), (json!(1), 0));
    assert_eq!(
        tqd(&["theory", "condense", "--theory", ds.to_str().unwrap(), "--bosons", "1,1"]).status.code(),
        Some(2)
    );

    let (v, _) = report(&["theory", "stack", "--theory", ds.to_str().unwrap(), "--with", tc.to_str().unwrap()]);
    assert_eq!(v["size"], json!(16));
}

#[test]
fn spt_and_circuit_checks() {
    let (v, code) = report(&["spt", "cocycle"]);
    assert_eq!(code, 0);
    assert_eq!(v["omega"]["1,1,1"], json!("1/2"));
    assert_eq!(v["coboundary_violations"], json!(0));
    assert_eq!(tqd(&["spt", "cocycle", "--L", "4"]).status.code(), Some(2));

    let (v, code) = report(&["appendixa", "check"]);
    assert_eq!(code, 0);
    assert_eq!(
        v,
        json!({ "psi_identity": "pass", "table1": "pass", "ucx_terms": "pass", "uab_ce": "pass" })
    );
}

#[test]
fn reports_are_deterministic() {
    let args = ["kmatrix", "build", "--N", "2,2", "--n", "1,0", "--nij", "1,2,1", "--json"];
    let a = tqd(&args).stdout;
    let b = tqd(&args).stdout;
    assert_eq!(a, b);
    assert_eq!(a.iter().filter(|&&c| c == b'\n').count(), 1);
}
