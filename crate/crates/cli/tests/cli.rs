//! End-to-end runs of the binary against the shipped structure files.

use std::path::PathBuf;
use std::process::{Command, Output};

fn structs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../structs")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ortholab"))
        .args(args)
        .current_dir(structs_dir())
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn check_gomp_on_the_benzene_ring_fails_with_witness() {
    let out = run(&["check", "o6.struct", "--class=gomp"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("FAIL gomp"), "{}", text);
    assert!(text.contains("orthomodular-upper"), "{}", text);
    assert!(text.contains("(a, b')"), "{}", text);
}

#[test]
fn check_strong_gomp_on_b4_passes() {
    let out = run(&["check", "b4.struct", "--class=strong-gomp"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("PASS strong-gomp"));
}

#[test]
fn verify_all_exits_zero() {
    let out = run(&["verify-all", "--max-n=5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 9);
    assert!(!text.contains("FAIL"));
}

#[test]
fn json_reports_parse() {
    let out = run(&["check", "o6.struct", "--class=gomp", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    assert_eq!(doc["command"], "check");
    assert_eq!(doc["checks"][0]["passed"], false);
    assert_eq!(doc["checks"][0]["condition"], "orthomodular-upper");
    assert_eq!(doc["checks"][0]["elements"][0], "a");
    assert_eq!(doc["checks"][0]["elements"][1], "b'");

    let out = run(&["verify-all", "--max-n=4", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["criteria"].as_array().unwrap().len(), 9);
}

#[test]
fn parse_errors_exit_two() {
    let out = run(&["check", "no-such-file.struct", "--class=gomp"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = std::env::temp_dir().join("ortholab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.struct");
    std::fs::write(
        &bad,
        "elements: 0 1\ncovers: 0 q\ncomp: 0 1, 1 0\nbottom: 0\ntop: 1\n",
    )
    .unwrap();
    let out = run(&["check", bad.to_str().unwrap(), "--class=gomp"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = run(&["check", "o6.struct", "--class=no-such-class"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["search", "--where=no-such-class"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn residuate_modes() {
    let out = run(&["residuate", "b4.struct", "--mode=gomp"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("R table"));
    assert!(text.contains("PASS conditionally-operator-residuated"));
    assert!(text.contains("PASS operator-divisibility"));

    let out = run(&["residuate", "o6.struct", "--mode=gomp"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("FAIL operator-divisibility"));

    let out = run(&["residuate", "mo2.struct", "--mode=strong", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["data"]["m_commutative"], false);
    // M(a,b) = {0,b} as a table cell: row "a" (index 1), column "b" (index 3).
    assert_eq!(doc["data"]["m"][1][3], serde_json::json!(["0", "b"]));
}

#[test]
fn directoid_and_congruence_reports() {
    let out = run(&["directoid", "o6.struct"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("FAIL condition-i"));
    assert!(text.contains("PASS condition-ii"));

    let out = run(&["congruence", "b4.struct"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("congruences: 4"));
    assert!(text.contains("PASS permutable"));
}

#[test]
fn directoid_block_in_file_is_used() {
    // A non-commutative table must be rejected by the directoid check.
    let dir = std::env::temp_dir().join("ortholab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken-table.struct");
    std::fs::write(
        &path,
        "elements: 0 1\ncovers: 0 1\ncomp: 0 1, 1 0\nbottom: 0\ntop: 1\ndirectoid:\n0 0\n1 1\n",
    )
    .unwrap();
    let out = run(&["check", path.to_str().unwrap(), "--class=directoid"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("commutativity"));
}

#[test]
fn dm_emits_a_reusable_completion() {
    let dir = std::env::temp_dir().join("ortholab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let emitted = dir.join("completion.struct");
    let out = run(&[
        "dm",
        "double-bowtie.struct",
        "--emit-completion",
        emitted.to_str().unwrap(),
    ]);
    // The double bowtie is not strong, so classification checks fail.
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("completion has 12 elements"));

    let out = run(&["check", emitted.to_str().unwrap(), "--class=orthoposet"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["check", emitted.to_str().unwrap(), "--class=lattice"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn congruence_guard_is_an_input_error() {
    let dir = std::env::temp_dir().join("ortholab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("chain13.struct");
    let names: Vec<String> = (0..13).map(|i| format!("e{}", i)).collect();
    let covers: Vec<String> = (0..12).map(|i| format!("e{} e{}", i, i + 1)).collect();
    let comp: Vec<String> = (0..13).map(|i| format!("e{} e{}", i, 12 - i)).collect();
    std::fs::write(
        &path,
        format!(
            "elements: {}\ncovers: {}\ncomp: {}\nbottom: e0\ntop: e12\n",
            names.join(" "),
            covers.join(", "),
            comp.join(", ")
        ),
    )
    .unwrap();
    let out = run(&["congruence", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("guard"));
}

#[test]
fn search_and_count() {
    let out = run(&["search", "--where=orthoposet & !gomp", "--max-n=6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("witness"));
    assert!(text.contains("elements: 0 1 2 3 4 5"));

    let out = run(&["search", "--where=gomp & !orthoposet", "--max-n=5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("not found up to n = 5"));

    let out = run(&["count", "--max-n=6", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["total"], 4);
}
