use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

fn champ(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_champ")).args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).unwrap())
}

fn export(dir: &Path, name: &str) -> PathBuf {
    let (code, text) = champ(&["export", name]);
    assert_eq!(code, 0, "export {name}");
    let path = dir.join(format!("{}.json", name.replace('/', "_")));
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> (i32, Value) {
    let (code, text) = champ(args);
    (code, serde_json::from_str(&text).expect("report is json"))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_site_on_the_square_succeeds() {
    let dir = TempDir::new().unwrap();
    let site = export(dir.path(), "site/square");
    let (code, report) = run(&["check-site", "--site", s(&site)]);
    assert_eq!(code, 0);
    assert_eq!(report["verdict"], "positive");
    assert_eq!(report["schema_version"], 1);
}

#[test]
fn sheafified_z2_on_the_pseudo_circle_is_not_a_stack() {
    let dir = TempDir::new().unwrap();
    let site = export(dir.path(), "site/pseudo_circle");
    let f = export(dir.path(), "grpd-presheaf/pseudo_circle/sheafified_bz2");
    let (code, report) = run(&["check-stack", "--site", s(&site), "--presheaf", s(&f)]);
    assert_eq!(code, 1);
    assert_eq!(report["message"], "effectivity fails: 2 classes vs 1");
    assert_eq!(report["result"]["verdict"], "protochamp");

    let (code, report) = run(&["stackify", "--site", s(&site), "--presheaf", s(&f)]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["classes_after"]["X"], 2);
}

#[test]
fn tau1_of_the_nerve_of_the_interval() {
    let dir = TempDir::new().unwrap();
    let cat = export(dir.path(), "category/interval");
    let (code, report) = run(&["nerve", "--in", s(&cat)]);
    assert_eq!(code, 0);
    let nerve = dir.path().join("nerve.json");
    std::fs::write(&nerve, report["result"].to_string()).unwrap();

    let (code, report) = run(&["tau1", "--in", s(&nerve)]);
    assert_eq!(code, 0);
    let c = &report["result"]["category"];
    assert_eq!(c["objects"].as_array().unwrap().len(), 2);
    assert_eq!(c["morphisms"].as_array().unwrap().len(), 3);

    let (code, _) = run(&["segal-check", "--in", s(&nerve)]);
    assert_eq!(code, 0);
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let site = export(dir.path(), "site/pseudo_circle");
    let f = export(dir.path(), "grpd-presheaf/pseudo_circle/sheafified_bz2");
    let args = ["descent", "--site", s(&site), "--presheaf", s(&f), "--cover", "A->X,B->X"];
    let (c1, a) = champ(&args);
    let (c2, b) = champ(&args);
    assert_eq!((c1, &a), (c2, &b));
    let report: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(report["message"], "2 classes vs 1");
    assert_eq!(c1, 1);
}

#[test]
fn digest_depends_on_flags_and_inputs() {
    let dir = TempDir::new().unwrap();
    let cat = export(dir.path(), "category/chain2");
    let (_, a) = run(&["nerve", "--in", s(&cat)]);
    let (_, b) = run(&["--trunc", "3", "nerve", "--in", s(&cat)]);
    let other = export(dir.path(), "category/chain3");
    let (_, c) = run(&["nerve", "--in", s(&other)]);
    assert_ne!(a["inputs_digest"], b["inputs_digest"]);
    assert_ne!(a["inputs_digest"], c["inputs_digest"]);
}

#[test]
fn exported_examples_validate() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("category/bs3", "category"),
        ("site/chain", "site"),
        ("reedy/delta2", "reedy"),
        ("cat-presheaf/point_into_iso", "cat-presheaf"),
        ("pseudo/twisted_associator", "pseudo"),
        ("sset/horn_2_1", "sset"),
    ];
    for (name, kind) in cases {
        let path = export(dir.path(), name);
        let (code, report) = run(&["validate", "--kind", kind, "--in", s(&path)]);
        assert_eq!(code, 0, "{name}: {report}");
    }
}

#[test]
fn malformed_input_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"objects":["a"],"morphisms":[],"identities":{},"compose":[]}"#).unwrap();
    let (code, report) = run(&["nerve", "--in", s(&bad)]);
    assert_eq!(code, 2);
    assert_eq!(report["verdict"], "input_error");

    let (code, _) = run(&["nerve", "--in", s(&dir.path().join("missing.json"))]);
    assert_eq!(code, 2);
}

#[test]
fn subdivision_of_a_non_poset_is_rejected() {
    let dir = TempDir::new().unwrap();
    let cat = export(dir.path(), "category/bz2");
    let (code, _) = run(&["subdivide", "--in", s(&cat)]);
    assert_eq!(code, 2);
    let cat = export(dir.path(), "category/square");
    let (code, report) = run(&["subdivide", "--in", s(&cat)]);
    assert_eq!(code, 0, "{report}");
}

#[test]
fn out_flag_writes_the_report() {
    let dir = TempDir::new().unwrap();
    let r = export(dir.path(), "reedy/delta1");
    let out = dir.path().join("report.json");
    let (code, text) = champ(&["reedy", "--in", s(&r), "--out", s(&out)]);
    assert_eq!(code, 0);
    assert!(text.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(report["command"], "reedy");
}

#[test]
fn holim_agrees_with_descent_on_a_single_arrow() {
    let dir = TempDir::new().unwrap();
    let site = export(dir.path(), "site/chain");
    for f in ["terminal", "constant_bz2", "constant_set"] {
        let f = export(dir.path(), &format!("grpd-presheaf/chain/{f}"));
        let (code, report) = run(&["holim", "--site", s(&site), "--presheaf", s(&f), "--cover", "0->1"]);
        assert_eq!(code, 0, "{report}");
    }
}

#[test]
fn every_listed_example_exports() {
    let (code, list) = champ(&["export", "list"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = list.lines().collect();
    assert!(names.len() > 30);
    for name in names {
        let (code, text) = champ(&["export", name]);
        assert_eq!(code, 0, "{name}");
        serde_json::from_str::<Value>(&text).unwrap();
    }
    assert_eq!(champ(&["export", "category/nope"]).0, 2);
}
