use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lya::corpus;
use lya::deformation::{apply_gauge, TruncatedDeformation};
use lya::formats;
use lya::sample::Sampler;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn lya(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lya")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("one JSON document")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gauged_null(dir: &Path, order: usize) -> PathBuf {
    let d =
        apply_gauge(&TruncatedDeformation::null(corpus::so3(false), order), &Sampler::new(3).gauge(3, order)).unwrap();
    let p = dir.join("gauged.def");
    formats::write_file(&p, &formats::deformation_to_string(&d)).unwrap();
    p
}

#[test]
fn check_passes_on_the_abelian_plane() {
    let o = lya(&["check", path(&data("abelian2.lya"))]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("6/6 axioms PASS"));
}

#[test]
fn check_fails_on_the_violator_with_a_witness() {
    let o = lya(&["check", path(&data("jacobi_violator.lya"))]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("axiom 3  FAIL"), "{out}");
    assert!(out.contains("at (e0,e1,e2)"), "{out}");
    assert!(out.contains("5/6 axioms FAIL"), "{out}");
}

#[test]
fn abelian_cohomology_table() {
    let o = lya(&["cohomology", path(&data("abelian2.lya")), "--levels", "1,2-3,4-5", "--json"]);
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    let dims: Vec<(u64, u64, u64)> = doc["levels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| (l["dimZPair"].as_u64().unwrap(), l["dimB"].as_u64().unwrap(), l["dimH"].as_u64().unwrap()))
        .collect();
    assert_eq!(dims, vec![(4, 0, 4), (6, 0, 6), (6, 0, 6)]);
    let table = stdout(&lya(&["cohomology", path(&data("abelian2.lya")), "--levels", "1,2-3,4-5"]));
    assert!(
        table.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["2-3", "6", "2,4", "0", "6"]),
        "{table}"
    );
}

#[test]
fn integrating_the_identity_cocycle_is_obstructed() {
    let o = lya(&[
        "deform-integrate",
        path(&data("abelian2.lya")),
        "--from",
        path(&data("g1_identity.coch")),
        "--order",
        "2",
    ]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("ternary"), "{out}");
    assert!(out.contains("(e0,e1,e0,e1,e0)"), "{out}");
    assert!(out.contains("-2*e0"), "{out}");
}

#[test]
fn integrating_on_a_rigid_base_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let f = gauged_null(dir.path(), 1);
    let o = lya(&["deform-integrate", path(&f), "--order", "3", "--json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let doc = json(&o);
    assert_eq!(doc["reached"], 3);
    let text = serde_json::to_string(&doc["deformation"]).unwrap();
    let d = formats::deformation_from_str(&text, None).unwrap();
    assert_eq!(d.order(), 3);
    let check = lya(&["deform-check", path(&f)]);
    assert_eq!(code(&check), 0);
}

#[test]
fn trivialize_and_obstruction_on_a_gauged_null() {
    let dir = tempfile::tempdir().unwrap();
    let f = gauged_null(dir.path(), 3);
    let o = lya(&["deform-trivialize", path(&f), "--json"]);
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    assert_eq!(doc["status"], "trivialized");
    let composed = formats::gauge_from_str(&serde_json::to_string(&doc["composed"]).unwrap(), 3).unwrap();
    let d = formats::load_deformation(&f).unwrap();
    assert!(apply_gauge(&d, &composed).unwrap().is_null());

    let o = lya(&["obstruction", path(&f), "--order", "3", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["inZ45"], true);
}

#[test]
fn rep_check_on_the_regular_representation() {
    let o = lya(&["rep-check", path(&data("so3.lya"))]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("relations PASS"));
}

#[test]
fn explicit_representation_file() {
    let dir = tempfile::tempdir().unwrap();
    let t = formats::load_structure(&data("solvable.lya")).unwrap();
    let r = lya::Representation::regular(&t).unwrap();
    let p = dir.path().join("regular.rep");
    formats::write_file(&p, &formats::representation_to_string(&r)).unwrap();
    let with = lya(&["cohomology", path(&data("solvable.lya")), "--rep", path(&p), "--levels", "1,2-3", "--json"]);
    let without = lya(&["cohomology", path(&data("solvable.lya")), "--levels", "1,2-3", "--json"]);
    assert_eq!(code(&with), 0);
    assert_eq!(json(&with)["levels"], json(&without)["levels"]);
}

#[test]
fn selftest_examples() {
    assert_eq!(code(&lya(&["selftest", "--dim", "2", "--seed", "42"])), 0);
    assert_eq!(code(&lya(&["selftest", "--dim", "3", "--seed", "7"])), 0);
    let o = lya(&["selftest", "--dim", "2", "--seed", "9", "--corrupt-delta"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("δ∘δ"));
}

#[test]
fn reports_are_deterministic() {
    let args = ["selftest", "--dim", "2", "--seed", "5", "--json"];
    assert_eq!(lya(&args).stdout, lya(&args).stdout);
    let so3 = data("so3.lya");
    let args = ["cohomology", path(&so3), "--json"];
    let a = lya(&args);
    assert_eq!(a.stdout, lya(&args).stdout);
}

#[test]
fn cohomology_report_reloads() {
    let o = lya(&["cohomology", path(&data("solvable.lya")), "--levels", "2-3", "--json"]);
    let level = &json(&o)["levels"][0];
    let report = formats::report_from_str(&serde_json::to_string(level).unwrap()).unwrap();
    let t = formats::load_structure(&data("solvable.lya")).unwrap();
    let direct = lya::cohomology::h23(&t, &lya::Representation::regular(&t).unwrap()).unwrap();
    assert_eq!(report, direct);
}

#[test]
fn usage_and_file_errors_exit_with_two() {
    assert_eq!(code(&lya(&["check", "/nonexistent/file.lya"])), 2);
    assert_eq!(code(&lya(&["frobnicate"])), 2);
    assert_eq!(code(&lya(&["cohomology", path(&data("abelian2.lya")), "--levels", "7-9"])), 2);
    let o = lya(&["cohomology", path(&data("abelian2.lya")), "--levels", "4-5", "--p-limit", "1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--p-limit"));
    assert_eq!(code(&lya(&["selftest", "--dim", "9"])), 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lya");
    std::fs::write(&bad, "{\"dim\": 2, \"surprise\": true}").unwrap();
    assert_eq!(code(&lya(&["check", path(&bad)])), 2);
}

#[test]
fn invalid_algebra_blocks_cohomology() {
    let o = lya(&["cohomology", path(&data("jacobi_violator.lya"))]);
    assert_eq!(code(&o), 1);
    assert!(o.stdout.is_empty());
}
