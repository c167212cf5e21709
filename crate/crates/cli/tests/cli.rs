use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn isym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isym")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn export_catalog(dir: &Path) -> Vec<std::path::PathBuf> {
    let o = isym(&["catalog", "--export", dir.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let mut files: Vec<_> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
}

#[test]
fn exported_catalog_validates() {
    let dir = tempfile::tempdir().unwrap();
    let files = export_catalog(dir.path());
    assert_eq!(files.len(), 10);
    for f in files {
        let o = isym(&["validate", f.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}: {}", f.display(), stdout(&o));
        assert!(stdout(&o).ends_with("valid\n"));
    }
}

#[test]
fn malformed_json_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.json");
    std::fs::write(&f, "{\n  \"cartan\": [").unwrap();
    let o = isym(&["validate", f.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn asymmetric_form_fails_and_names_the_axiom() {
    let dir = tempfile::tempdir().unwrap();
    let o = isym(&["catalog", "A2-split"]);
    let mut v = json(&o);
    v["cartan"]["form"][0][1] = Value::from(0);
    let f = dir.path().join("asym.json");
    std::fs::write(&f, v.to_string()).unwrap();
    let o = isym(&["validate", f.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL    cartan: form is symmetric"));
    let o = isym(&["validate", "--format", "json", f.to_str().unwrap()]);
    let v = json(&o);
    assert_eq!(v["passed"], false);
    assert_eq!(v["checks"][0]["check"]["axiom"], "form is symmetric");
}

#[test]
fn unknown_entry_and_suite_are_input_errors() {
    assert_eq!(code(&isym(&["verify", "lie", "no-such-entry"])), 2);
    assert_eq!(code(&isym(&["verify", "nosuite", "SL2-split"])), 2);
    assert_eq!(code(&isym(&["catalog", "E8-split"])), 2);
}

#[test]
fn verify_reports_are_deterministic() {
    let run = |extra: &[&str]| {
        let mut args = vec!["verify", "all", "SL2-split", "--format", "json"];
        args.extend_from_slice(extra);
        let o = isym(&args);
        assert_eq!(code(&o), 0);
        o.stdout
    };
    let a = run(&[]);
    assert_eq!(a, run(&[]));
    assert_eq!(a, run(&["--sequential"]));
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["schema"], "isym-report/1");
    assert_eq!(v["suite"], "all");
    assert_eq!(v["seed"], 0x5eed);
    assert!(v["input_digest"].as_str().unwrap().len() == 64);
    for s in v["sections"].as_array().unwrap() {
        assert_eq!(s["passed"], true);
        assert!(s["checks"].as_array().is_some_and(|c| !c.is_empty()));
    }
    assert_ne!(a, run(&["--seed", "7"]));
}

#[test]
fn involution_report_has_sign_table() {
    let o = isym(&["verify", "involution", "SL2-split", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let table = &v["sections"][0]["data"]["sign_table"];
    assert_eq!(table.as_array().unwrap().len(), 1);
    assert_eq!(code(&isym(&["verify", "involution", "SL2-split", "--sign", "-1"])), 0);
}

#[test]
fn epsilon_black_control_fails() {
    let o = isym(&["verify", "involution", "A3-AIII", "--epsilon-black", "+1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("negative control"));
}

#[test]
fn xlattice_summaries() {
    let first = |e: &str| stdout(&isym(&["xlattice", e])).lines().next().unwrap().to_string();
    assert_eq!(first("SL2-split"), "X_ι ≅ ℤ/2, Y^ι = 0, pairing not perfect");
    assert!(first("A2-quasi-split").starts_with("X_ι ≅ ℤ,"));
    assert!(first("SL2-compact").starts_with("X_ι = X,"));
}

#[test]
fn sl2lab_rows() {
    let o = isym(&["sl2lab", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.iter().map(|r| r["p"].as_u64().unwrap()).collect::<Vec<_>>(), vec![3, 5, 7]);
    for r in rows {
        assert_eq!(r["fixed"], r["conic"]);
        assert_eq!(r["normative"], true);
    }
    assert_eq!(v["char2"]["vanishes_mod_2"], true);

    let o = isym(&["sl2lab", "--sign", "-1", "--primes", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("non-normative"));
}

#[test]
fn bad_primes_are_usage_errors() {
    for p in ["2", "9", "17", "x"] {
        assert_eq!(code(&isym(&["sl2lab", "--primes", p])), 2, "{p}");
    }
}
