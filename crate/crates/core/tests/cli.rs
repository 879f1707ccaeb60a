use std::process::{Command, Output};

use saddle_config::configuration::Label;
use saddle_config::Configuration;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_saddle-config")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap().trim().to_string()
}

fn pillowcase_file(dir: &tempfile::TempDir) -> String {
    let out = run(&["enumerate", "--stratum", "Q(-1^4)"]);
    let all: Vec<Configuration> = serde_json::from_str(&stdout(&out)).unwrap();
    let path = dir.path().join("pillowcase.json");
    std::fs::write(&path, all[0].to_json().unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn info_reports_empty_strata() {
    let out = run(&["info", "Q(3,1)"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["nonempty"], false);
    assert_eq!(v["genus"], 2);
}

#[test]
fn enumerate_counts() {
    assert_eq!(stdout(&run(&["enumerate", "--stratum", "Q(-1^4)", "--count-only"])), "1");
    assert_eq!(stdout(&run(&["enumerate", "--stratum", "Q(1,1,-1^6)", "--count-only"])), "4");
    assert_eq!(stdout(&run(&["enumerate", "--stratum", "Q(2,-1^6)", "--family", "B", "--count-only"])), "1");
}

#[test]
fn output_is_deterministic() {
    let a = run(&["lift", "--stratum", "Q(3,3,2)"]);
    let b = run(&["lift", "--stratum", "Q(3,3,2)"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn genus_and_validate_on_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = pillowcase_file(&dir);
    assert_eq!(stdout(&run(&["genus", &path])), "0");
    let out = run(&["validate", &path]);
    assert_eq!(out.status.code(), Some(0));

    let mut cfg = Configuration::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    cfg.components[0].label = Label::Plus;
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, cfg.to_json().unwrap()).unwrap();
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("V4"));
}

#[test]
fn test_hyp_on_lifted_output() {
    let dir = tempfile::tempdir().unwrap();
    let all: Vec<Configuration> = serde_json::from_str(&stdout(&run(&["lift", "--stratum", "Q(3,3,2)"]))).unwrap();
    let path = dir.path().join("lifted.json");
    std::fs::write(&path, all[0].to_json().unwrap()).unwrap();
    let out = run(&["test-hyp", path.to_str().unwrap(), "--stratum", "Q(3,3,2)"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["quick_test"], "Inconclusive");
    assert_eq!(v["admissible_in_hyperelliptic"], true);
}

#[test]
fn corpus_writes_one_file_per_stratum() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["corpus", "--max-sum", "8", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), rows.len());
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["info", "Q(1,"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--stratum", "Q(3,3,2)"]).status.code(), Some(2));
    assert_eq!(run(&["lift", "--stratum", "Q(2,2,-1^4)"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}
