use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rs-insdel")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, text) = run(args);
    (code, serde_json::from_str(&text).unwrap_or(Value::Null))
}

#[test]
fn analyze_witness_code() {
    let (code, v) = json(&["analyze", "--field", "7", "--k", "2", "--alpha", "0,1,2,5", "--method", "brute"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"]["report"]["lcs_of_code"], 2);
    assert_eq!(v["result"]["report"]["max_correctable"], 1);
    assert_eq!(v["result"]["report"]["optimal"], true);
}

#[test]
fn analyze_progression_corrects_nothing() {
    let (code, v) = json(&["analyze", "--field", "7", "--k", "2", "--alpha", "0,1,2,3,4,5,6", "--method", "affine"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["report"]["max_correctable"], 0);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", "--field", "7", "--k", "2", "--alpha", "0,1,x"]).0, 2);
    assert_eq!(run(&["analyze", "--field", "6", "--k", "2", "--alpha", "0,1,2"]).0, 2);
    assert_eq!(run(&["analyze", "--field", "7", "--k", "2", "--alpha", "0,1,1"]).0, 2);
    assert_eq!(run(&["sample", "--field", "81", "--delta", "0.5", "--trials", "3"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    let (code, v) = json(&["census", "--field", "13"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "guard_exceeded");
    assert_eq!(run(&["analyze", "--field", "64", "--k", "3", "--alpha", "0,1,2,3,4,5"]).0, 3);
    assert_eq!(run(&["construct", "--field", "5", "--k", "2"]).0, 2);
    assert_eq!(run(&["census", "--field", "7", "--format", "csv"]).0, 2);
}

#[test]
fn table1_csv() {
    let (code, text) = run(&["table1", "--format", "csv"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 8);
    assert!(rows[0].starts_with("q,method"));
    assert!(rows[4].starts_with("8,census,720,708,0.983"));
}

#[test]
fn output_file_and_timing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bounds.json");
    let p = path.to_str().unwrap();
    let (code, stdout) = run(&["bounds", "prop7", "--field", "8", "--output", p, "--timing"]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["exact_value"], "708");
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn thread_count_does_not_change_output() {
    let commands: [&[&str]; 5] = [
        &["sample", "--field", "81", "--delta", "0.5", "--trials", "50", "--seed", "42"],
        &["census", "--field", "8"],
        &["construct", "--field", "251", "--k", "3"],
        &["analyze", "--field", "9", "--k", "2", "--alpha", "0,1,3,7,2,5", "--method", "brute"],
        &["table1"],
    ];
    for cmd in commands {
        let one = run(&[cmd, &["--threads", "1"]].concat());
        let four = run(&[cmd, &["--threads", "4"]].concat());
        assert_eq!(one.0, 0, "{cmd:?}");
        assert_eq!(one, four, "{cmd:?}");
    }
}
