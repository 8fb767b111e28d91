//! End-to-end runs of the binary on the bundled fixtures.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> (Option<i32>, Value, String) {
    let out: Output = Command::new(env!("CARGO_BIN_EXE_hopfcalc")).args(args).output().expect("binary runs");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code(), json, String::from_utf8_lossy(&out.stderr).into_owned())
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

fn dims(v: &Value) -> Vec<u64> {
    v.as_array().expect("array").iter().map(|x| x.as_u64().expect("integer")).collect()
}

#[test]
fn check_passes_on_valid_instance_and_marks_truncation() {
    let (code, report, _) = run(&["check", &path("dual_numbers_sigma_id.json"), "--nmax", "2", "--pmax", "2"]);
    assert_eq!(code, Some(0));
    assert_eq!(report["schema"], 1);
    assert_eq!(report["config"]["n_max"], 2);
    let entries = report["entries"].as_array().unwrap();
    let truncated = entries
        .iter()
        .find(|e| e["identity"] == "bv.cartan_homotopy" && e["status"] == "untested")
        .expect("higher degrees of the Cartan formula are marked untested");
    assert_eq!(truncated["degrees"], "n = 3..=5");
}

#[test]
fn broken_translation_names_schauenburg_failures() {
    let (code, report, stderr) = run(&["check", &path("broken_translation.json"), "--nmax", "2"]);
    assert_eq!(code, Some(1));
    let fails: Vec<&Value> = report["entries"].as_array().unwrap().iter().filter(|e| e["status"] == "fail").collect();
    assert!(fails.iter().any(|e| e["identity"].as_str().unwrap().starts_with("schauenburg.")));
    assert!(fails.iter().all(|e| e["counterexample"].is_object()));
    assert!(stderr.contains("FAIL schauenburg."));
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(run(&["check", "/nonexistent/instance.json"]).0, Some(2));
    assert_eq!(run(&["check"]).0, Some(2));
    let bad = std::env::temp_dir().join(format!("hopfcalc-bad-{}.json", std::process::id()));
    std::fs::write(&bad, r#"{"field":"Q","kind":"group_algebra","group_table":[[0,0],[0,0]]}"#).unwrap();
    assert_eq!(run(&["homology", bad.to_str().unwrap()]).0, Some(2));
    let _ = std::fs::remove_file(bad);
}

#[test]
fn homology_tables() {
    let (code, r, _) = run(&["homology", &path("dual_numbers_sigma_id.json"), "--nmax", "4"]);
    assert_eq!(code, Some(0));
    assert_eq!(dims(&r["homology"]["chain_dims"]), [2, 1, 1, 1, 1]);

    let (code, r, _) = run(&["homology", &path("dual_numbers_sigma_neg.json"), "--nmax", "4"]);
    assert_eq!(code, Some(0));
    let h = &r["homology"];
    assert_eq!(h["cyclic_dims"].as_array().unwrap().len(), 5);
    let eig = &h["eigenspaces"];
    assert_eq!(eig["eigenvalues"], serde_json::json!(["1", "-1"]));
    // C_n = ker(id − T) ⊕ im(id − T) in every degree
    let ker = dims(&eig["ker_id_minus_t"]);
    let im = dims(&eig["im_id_minus_t"]);
    for n in 0..=4 {
        assert_eq!(ker[n] + im[n], 1 << (n + 1));
    }
    assert!(eig["quasi_cyclic"].as_array().unwrap().iter().all(|b| b == true));

    let (code, r, _) = run(&["homology", &path("group_z3_q.json"), "--nmax", "4"]);
    assert_eq!(code, Some(0));
    assert_eq!(dims(&r["homology"]["chain_dims"]), [1, 0, 0, 0, 0]);
}

#[test]
fn structure_tables_from_the_cli() {
    let (code, r, _) = run(&["tables", &path("dual_numbers_sigma_id.json"), "--degmax", "3"]);
    assert_eq!(code, Some(0));
    assert_eq!(r["tables"]["bv"], "pass");

    let (code, r, _) = run(&["tables", &path("group_z2_f2.json"), "--degmax", "3"]);
    assert_eq!(code, Some(0));
    assert_eq!(r["tables"]["bracket_is_zero"], true);
    for t in r["tables"]["bracket"].as_array().unwrap() {
        for row in t["entries"].as_array().unwrap() {
            for v in row.as_array().unwrap() {
                assert!(v.as_array().unwrap().iter().all(|x| x == "0"));
            }
        }
    }

    let (code, r, _) = run(&["tables", &path("dual_numbers_sigma_id.json"), "--degmax", "0"]);
    assert_eq!(code, Some(0));
    let t = &r["tables"];
    assert_eq!(t["cohomology_labels"].as_array().unwrap().len(), 1);
    assert_eq!(t["homology_labels"].as_array().unwrap().len(), 1);
    assert!(t["bracket"].as_array().unwrap().is_empty());
}
