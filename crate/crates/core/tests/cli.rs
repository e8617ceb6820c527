use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use sha2::{Digest, Sha256};

fn stuq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stuq")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_accepts_catalog_structures() {
    for id in ["X1_ex63", "X2_ex63", "X_ex71", "X_ex72", "X_ex74"] {
        let o = stuq(&["verify", &format!("catalog:{id}")]);
        assert_eq!(code(&o), 0, "{id}");
        assert!(stdout(&o).starts_with("ok: order"));
    }
}

#[test]
fn made_structure_verifies_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("x.json");
    let o = stuq(&["make", "affine", "--n", "7", "--a", "3", "--b", "-2", "--e", "5"]);
    assert_eq!(code(&o), 0);
    fs::write(&file, &o.stdout).unwrap();
    let v = stuq(&["verify", path(&file)]);
    assert_eq!(code(&v), 0);
    assert_eq!(stdout(&v), "ok: order 7, all 13 axioms hold\n");
}

#[test]
fn non_unit_is_malformed() {
    assert_eq!(code(&stuq(&["make", "affine", "--n", "6", "--a", "2", "--b", "0", "--e", "0"])), 1);
}

#[test]
fn violation_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    // idempotent star with constant R1 and R2 breaks the compatibility axioms
    let t = |v: &str| format!("[[{v},{v}],[{v},{v}]]");
    let json = format!(
        r#"{{"n": 2, "star": [[0,0],[1,1]], "r1": {}, "r2": {}, "r3": [[0,0],[1,1]], "r4": [[0,1],[0,1]]}}"#,
        t("1"),
        t("0")
    );
    fs::write(&file, json).unwrap();
    let o = stuq(&["verify", path(&file)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("axiom"));
}

#[test]
fn malformed_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("junk.json");
    fs::write(&file, "{ not json").unwrap();
    assert_eq!(code(&stuq(&["verify", path(&file)])), 1);
    assert_eq!(code(&stuq(&["verify", path(&dir.path().join("missing.json"))])), 1);
    assert_eq!(code(&stuq(&["frobnicate"])), 1);
}

#[test]
fn unknown_fixture_exits_three() {
    assert_eq!(code(&stuq(&["catalog", "show", "no_such_thing"])), 3);
    assert_eq!(code(&stuq(&["poly", "catalog:no_such_thing"])), 3);
}

#[test]
fn poly_prints_canonical_string() {
    let o = stuq(&["poly", "catalog:X1_ex63"]);
    assert_eq!(stdout(&o), "4*s1^2*t1^2*s2*t2*s3^4*t3^4*s4^2*t4^2*s5*t5\n");
}

#[test]
fn subpoly_closed_and_not_closed() {
    let o = stuq(&["subpoly", "catalog:X1_ex63", "--subset", "1,3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "2*s1^2*t1^2*s2*t2*s3^4*t3^4*s4^2*t4^2*s5*t5\n");
    assert_eq!(code(&stuq(&["subpoly", "catalog:X1_ex63", "--subset", "0,1"])), 2);
}

#[test]
fn unknot_has_one_coloring_per_element() {
    for (id, n) in [("X_ex71", 4), ("X_ex72", 3)] {
        let o = stuq(&["color", "catalog:unknot", &format!("catalog:{id}")]);
        assert!(stdout(&o).ends_with(&format!("count: {n}\n")), "{}", stdout(&o));
    }
}

#[test]
fn compare_distinguishes_the_enhanced_pair() {
    let o = stuq(&["compare", "catalog:K1_ex72", "catalog:K2_ex72", "catalog:X_ex72"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("verdict: DISTINGUISHED\n"));
    let same = stuq(&["compare", "catalog:K1_ex72", "catalog:K1_ex72", "catalog:X_ex72"]);
    assert!(stdout(&same).ends_with("verdict: INCONCLUSIVE\n"));
}

#[test]
fn rna_convert_emits_presentation_text() {
    let o = stuq(&["rna", "convert", "catalog:rna_K1_ex74"]);
    assert_eq!(stdout(&o), "name: rna_K1_ex74\ngenerators: a, b, c\nb = R3(a, c)\na = R4(a, c)\nc = b * a\n");
}

#[test]
fn text_presentation_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("k.txt");
    fs::write(&file, stdout(&stuq(&["rna", "convert", "catalog:rna_K1_ex74"]))).unwrap();
    let from_text = stuq(&["phi", path(&file), "catalog:X_ex74"]);
    let direct = stuq(&["rna", "phi", "catalog:rna_K1_ex74", "catalog:X_ex74"]);
    assert_eq!(code(&from_text), 0);
    assert!(stdout(&direct).contains(stdout(&from_text).trim()));
}

#[test]
fn json_report_digests_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("x.json");
    fs::write(&file, stuq(&["make", "affine", "--n", "5", "--a", "2", "--b", "1", "--e", "3"]).stdout).unwrap();
    let o = stuq(&["--json", "poly", path(&file)]);
    assert_eq!(code(&o), 0);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let expected = hex::encode(Sha256::digest(fs::read(&file).unwrap()));
    assert_eq!(report["inputs"][0]["sha256"], expected.as_str());
    assert_eq!(report["inputs"][0]["source"], path(&file));
    assert!(report["outputs"]["stqp"].as_str().unwrap().starts_with("5*"));
    assert!(report.get("timing_ms").is_none());
}

#[test]
fn output_is_deterministic_across_runs_and_jobs() {
    let args = ["phi", "catalog:trefoil_2_1_k_minus", "catalog:X_ex71"];
    let first = stuq(&args).stdout;
    assert_eq!(stuq(&args).stdout, first);
    let mut parallel = vec!["--jobs", "4"];
    parallel.extend(args);
    assert_eq!(stuq(&parallel).stdout, first);
    let list = stuq(&["catalog", "list"]).stdout;
    assert_eq!(stuq(&["catalog", "list"]).stdout, list);
}

#[test]
fn catalog_check_passes() {
    let o = stuq(&["catalog", "check"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}
