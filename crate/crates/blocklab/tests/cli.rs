//! Smoke tests for the command-line contract: argument handling, exit
//! codes, report shape on disk. Kept to small groups so they stay fast.

use std::path::PathBuf;
use std::process::{Command, Output};

fn blocklab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blocklab"))
        .args(args)
        .output()
        .expect("run blocklab")
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("blocklab-cli-{}-{name}", std::process::id()))
}

#[test]
fn corpus_list_prints_23_pairs() {
    let out = blocklab(&["corpus", "list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 23);
    assert!(lines.contains(&"s3 5"));
    assert!(lines.contains(&"trivial 2"));
    for line in &lines {
        let mut parts = line.split_whitespace();
        parts.next().expect("name");
        parts.next().expect("prime").parse::<u32>().unwrap();
        assert_eq!(parts.next(), None);
    }
}

#[test]
fn analyze_writes_a_schema_1_report() {
    let path = temp_path("s3-p2.json");
    let out = blocklab(&[
        "analyze",
        "--named",
        "s3",
        "--prime",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["schema"], 1);
    assert_eq!(report["group"]["order"], 6);
    assert_eq!(report["prime"], 2);
    assert_eq!(report["blocks"].as_array().unwrap().len(), 2);
    assert_eq!(report["verdicts"].as_array().unwrap().len(), 13);
    std::fs::remove_file(&path).ok();
}

#[test]
fn analyze_accepts_a_group_file() {
    let gpath = temp_path("c4.json");
    std::fs::write(&gpath, r#"{"name": "my-c4", "degree": 4, "generators": [[1, 2, 3, 0]]}"#)
        .unwrap();
    let out = blocklab(&["analyze", "--file", gpath.to_str().unwrap(), "--prime", "2"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["group"]["name"], "my-c4");
    assert_eq!(report["group"]["order"], 4);
    // A p-group algebra is a single block of full defect.
    assert_eq!(report["blocks"].as_array().unwrap().len(), 1);
    assert_eq!(report["blocks"][0]["defect_order"], 4);
    std::fs::remove_file(&gpath).ok();
}

#[test]
fn configuration_errors_exit_2() {
    assert_eq!(blocklab(&["analyze", "--named", "nope", "--prime", "2"]).status.code(), Some(2));
    assert_eq!(blocklab(&["analyze", "--named", "s3", "--prime", "6"]).status.code(), Some(2));
    assert_eq!(blocklab(&["analyze", "--prime", "2"]).status.code(), Some(2));
    assert_eq!(
        blocklab(&["analyze", "--named", "s3", "--file", "x.json", "--prime", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        blocklab(&["analyze", "--file", "/no/such/file.json", "--prime", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(blocklab(&["verify", "--corpus", "other"]).status.code(), Some(2));
    // clap usage errors share the configuration exit code
    assert_eq!(blocklab(&["analyze", "--named", "s3"]).status.code(), Some(2));
    assert_eq!(blocklab(&[]).status.code(), Some(2));
}

#[test]
fn analyze_seed_is_stable_for_name() {
    // The working seed derives from (global seed, name, prime), so two runs
    // with the same flags produce identical reports.
    let a = blocklab(&["analyze", "--named", "d8", "--prime", "2", "--seed", "5"]);
    let b = blocklab(&["analyze", "--named", "d8", "--prime", "2", "--seed", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let canonical = report["group"]["name"].as_str().unwrap();
    assert_eq!(report["seed"], blocklab::analyze::entry_seed(5, canonical, 2));
}
