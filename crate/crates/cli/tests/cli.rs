use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_groupwit")).args(args).output().expect("binary runs")
}

fn doc(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("groupwit-{}-{name}", std::process::id()))
}

#[test]
fn hybrid_report() {
    let o = run(&["hybrid", "--G", "F21", "--H", "S3", "--theta-image", "Z3"]);
    assert_eq!(o.status.code(), Some(0));
    let d = doc(&o);
    assert_eq!(d["order"], 294);
    assert_eq!(d["kernel"]["order"], 49);
    assert_eq!(d["kernel"]["abelian"], true);
    assert_eq!(d["base_order"], 147);
}

#[test]
fn build_then_verify_then_tamper() {
    let path = scratch("z4v4.json");
    let p = path.to_str().unwrap();
    let o = run(&["witness", "build", "--L1", "Z4", "--L2", "Z2xZ2", "--series", "auto-central", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(doc(&o)["order"], 8);
    let o = run(&["witness", "verify", p]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(doc(&o)["report"]["complete"], true);
    let o = run(&["witness", "verify", p, "--L1", "Z8", "--L2", "Z8"]);
    assert_eq!(o.status.code(), Some(1));

    let mut cert: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let table = cert["p"][0].as_array_mut().unwrap();
    let last = table.len() - 1;
    table[last] = Value::from((table[last].as_u64().unwrap() + 1) % 4);
    std::fs::write(&path, serde_json::to_string(&cert).unwrap()).unwrap();
    let o = run(&["witness", "verify", p]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(doc(&o)["report"]["passed"], false);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn output_is_deterministic() {
    let args = ["witness", "build", "--L1", "D8", "--L2", "Q8"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn comp_check_on_a_length_two_pair() {
    let o = run(&["comp", "check", "--L1", "Z6", "--L2", "S3", "--series", "auto-square-free"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(doc(&o)["verdict"], "member of Comp_2");
}

#[test]
fn series_orders() {
    let o = run(&["series", "central", "D8"]);
    assert_eq!(doc(&o)["orders"], serde_json::json!([1, 2, 4, 8]));
    let o = run(&["series", "square-free", "F21xZ2"]);
    assert_eq!(doc(&o)["orders"], serde_json::json!([1, 7, 21, 42]));
}

#[test]
fn exit_codes() {
    // refuted: S3 is not nilpotent, Z4 and Z2² are not square-free
    assert_eq!(run(&["series", "central", "S3"]).status.code(), Some(1));
    assert_eq!(run(&["witness", "build", "--L1", "Z4", "--L2", "Z2xZ2", "--series", "auto-square-free"]).status.code(), Some(1));
    // undecided: the enumeration bound is too small
    let o = run(&["witness", "build", "--L1", "D8", "--L2", "Q8", "--bound-enum", "100"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(doc(&o)["status"], "undecided");
    // malformed
    assert_eq!(run(&["group", "{\"bogus\": 1}"]).status.code(), Some(3));
    assert_eq!(run(&["group", "Y7"]).status.code(), Some(3));
    assert_eq!(run(&["witness", "build", "--L1", "Z4"]).status.code(), Some(3));
    assert_eq!(run(&["group", "Z4", "--mode", "stretch"]).status.code(), Some(3));
}

#[test]
fn limit_from_inline_json() {
    let system = r#"{
        "nodes": [{"id": "b", "group": "Z2"}, {"id": "x", "group": "Z4"}, {"id": "y", "group": "Z4"}],
        "leq": [["b", "x"], ["b", "y"]],
        "transitions": [
            {"from": "x", "to": "b", "images": [[[1, 2, 3, 0], [1, 0]]]},
            {"from": "y", "to": "b", "images": [[[1, 2, 3, 0], [1, 0]]]}
        ]
    }"#;
    let o = run(&["limit", system]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(doc(&o)["order"], 8);
}

#[test]
fn examples_manifest_passes() {
    let o = run(&["examples"]);
    assert_eq!(o.status.code(), Some(0));
    let d = doc(&o);
    assert_eq!(d["all_pass"], true);
    assert_eq!(d["examples"].as_array().unwrap().len(), 13);
}

#[test]
fn seeded_suite() {
    let o = run(&["suite", "--seed", "3", "--cases", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(doc(&o)["failures"], serde_json::json!([]));
}

#[test]
fn stretch_build_and_verify() {
    let path = scratch("stretch30.json");
    let p = path.to_str().unwrap();
    let args = ["witness", "build", "--L1", "Z30", "--L2", "Z5xS3", "--series", "auto-square-free", "--mode", "stretch"];
    let o = run(&[&args[..], &["--out", p]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(doc(&o)["order"], "7031250");
    let o = run(&["witness", "verify", p]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(doc(&o)["matches_file"], true);
    std::fs::remove_file(&path).unwrap();
}
