//! End-to-end checks of the binary: output shapes, exit codes and the
//! byte-determinism contract.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_duality-lab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn write_fixture(dir: &tempfile::TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn bool4(dir: &tempfile::TempDir) -> PathBuf {
    write_fixture(
        dir,
        "bool4.json",
        r#"{"elements": ["bot", "x", "y", "top"],
            "leq": [["bot","x"], ["bot","y"], ["x","top"], ["y","top"]]}"#,
    )
}

#[test]
fn lattice_report_on_bool4() {
    let dir = tempfile::tempdir().unwrap();
    let file = bool4(&dir);
    let out = run(&["lattice", "report", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "lattice ✓ distributive ✓ heyting ✓ decompositions ✓ Cn = {bot,x,y}\n"
    );
}

#[test]
fn lattice_report_flags_m3() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_fixture(
        &dir,
        "m3.json",
        r#"{"elements": ["bot","a","b","c","top"],
            "leq": [["bot","a"],["bot","b"],["bot","c"],["a","top"],["b","top"],["c","top"]]}"#,
    );
    let out = run(&["lattice", "report", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("decompositions ✗ (witness top)"), "{text}");
    assert!(text.contains("heyting ✗"), "{text}");
}

#[test]
fn malformed_lattice_files_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cyclic = write_fixture(
        &dir,
        "cyclic.json",
        r#"{"elements": ["a","b"], "leq": [["a","b"],["b","a"]]}"#,
    );
    let out = run(&["lattice", "report", cyclic.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let bad_json = write_fixture(&dir, "bad.json", "{not json");
    let out = run(&["lattice", "report", bad_json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dual_check_verifies_the_path_tournament_pair() {
    let out = run(&[
        "dual",
        "check",
        "--digraph",
        "--bound",
        "4",
        "--left",
        "path:2",
        "--right",
        "tt:2",
        "--output",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"]["verified_bound"], 4);
    assert_eq!(v["degenerate"], false);
}

#[test]
fn dual_check_refutes_the_cycle_with_a_witness() {
    let out = run(&[
        "dual",
        "check",
        "--digraph",
        "--bound",
        "3",
        "--left",
        "cycle:3",
        "--right",
        "tt:2",
        "--output",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["status"]["refuted_witness"].is_object());
}

#[test]
fn dual_build_on_bool4_top() {
    let dir = tempfile::tempdir().unwrap();
    let file = bool4(&dir);
    let out = run(&[
        "dual",
        "build",
        "--lattice",
        file.to_str().unwrap(),
        "--left",
        "top",
        "--output",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["right"], serde_json::json!(["x", "y"]));
}

#[test]
fn dual_build_without_a_dual_is_inconclusive_at_bound() {
    let out = run(&[
        "dual",
        "build",
        "--digraph",
        "--bound",
        "4",
        "--left",
        "cycle:3",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn transversal_report_lists_members_complement_and_r() {
    let dir = tempfile::tempdir().unwrap();
    let file = bool4(&dir);
    let out = run(&[
        "dual",
        "transversals",
        "--lattice",
        file.to_str().unwrap(),
        "--left",
        "top",
        "--output",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        v,
        serde_json::json!([
            {"members": ["x"], "complement": ["y"], "r": "y"},
            {"members": ["y"], "complement": ["x"], "r": "x"},
        ])
    );
}

#[test]
fn gap_listing_covers_bool4() {
    let dir = tempfile::tempdir().unwrap();
    let file = bool4(&dir);
    let out = run(&["dual", "gaps", "--lattice", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 4);
}

#[test]
fn antichain_split_and_reconstruction() {
    let dir = tempfile::tempdir().unwrap();
    let file = bool4(&dir);
    let out = run(&[
        "dual",
        "antichain",
        "--lattice",
        file.to_str().unwrap(),
        "--elements",
        "x,y",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("split: above = {x} below = {y}"), "{text}");
    assert!(text.contains("matches = true"), "{text}");
}

#[test]
fn enumerate_count_line_matches_the_class_counts() {
    let out = run(&["digraph", "enumerate", "--max", "2", "--count-only"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "n≤1: 3, n=2: 10\n");
}

#[test]
fn core_of_two_disjoint_arcs_is_one_arc() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_fixture(&dir, "two_arcs.json", r#"{"n":4,"arcs":[[0,1],[2,3]]}"#);
    let out = run(&[
        "digraph",
        "core",
        file.to_str().unwrap(),
        "--output",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), r#"{"arcs":[[0,1]],"n":2}"#);
}

#[test]
fn hom_exit_codes_distinguish_existence() {
    let found = run(&["digraph", "hom", "path:2", "tt:3"]);
    assert_eq!(found.status.code(), Some(0));
    assert_eq!(stdout(&found), "0 -> 0\n1 -> 1\n2 -> 2\n");
    let missing = run(&["digraph", "hom", "cycle:3", "tt:4"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn matrix_input_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_fixture(&dir, "path.txt", "010\n001\n000\n");
    let out = run(&[
        "digraph",
        "core",
        file.to_str().unwrap(),
        "--output",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), r#"{"arcs":[[0,1],[1,2]],"n":3}"#);
}

#[test]
fn dot_output_for_digraphs() {
    let out = run(&["digraph", "core", "path:1", "--output", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "digraph G {\n  0 -> 1;\n}\n");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "dual",
        "build",
        "--digraph",
        "--bound",
        "4",
        "--left",
        "path:2",
        "--output",
        "json",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn backend_selection_must_be_unambiguous() {
    let out = run(&["dual", "check", "--left", "path:1", "--right", "tt:1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thread_env_is_validated() {
    let out = bin()
        .args(["digraph", "hom", "path:1", "tt:2"])
        .env("DUALITY_LAB_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
