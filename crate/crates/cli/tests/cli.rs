use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const RUNNING: &str = "15,11,10,7,6,4,3|3,5,7,8,10,15";

fn kacmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kacmod")).args(args).output().expect("binary runs")
}

fn kacmod_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kacmod"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn factors_of_running_example() {
    let o = kacmod(&["factors", RUNNING]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 14);
    assert!(out.lines().any(|l| l.starts_with("(0,0,0,0)\t15,11,10,7,6,4,3|3,5,7,8,10,15")));
}

#[test]
fn theta_json_lists_fourteen_tuples() {
    let o = kacmod(&["theta", RUNNING, "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let tuples = v.as_array().unwrap();
    assert_eq!(tuples.len(), 14);
    assert!(tuples.contains(&serde_json::json!([1, 0, 3, 0])));
}

#[test]
fn nqc_json_schema() {
    let o = kacmod(&["nqc", RUNNING, "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["r"], 4);
    assert_eq!(v["rel"][0], serde_json::json!(["q", "c", "c", "n"]));
    assert_eq!(v["p"], serde_json::json!([3, 2, 3, 4]));
    assert_eq!(v["plow"], serde_json::json!([1, 1, 3, 4]));
}

#[test]
fn nqc_text_is_aligned() {
    let out = stdout(&kacmod(&["nqc", RUNNING]));
    assert!(out.contains("  1  q  c  c  n\n"), "{out}");
    assert!(out.contains("k     = (10,2,2,1)"));
}

#[test]
fn partition_notation_matches_shifted() {
    let a = stdout(&kacmod(&["factors", "3,1|1,3"]));
    let p = stdout(&kacmod(&["factors", "--notation", "partition", "1,0/0,-1"]));
    let q = stdout(&kacmod(&["factors", "--notation", "shifted", "3,1|1,3"]));
    assert_eq!(a, q);
    assert_eq!(a.lines().count(), p.lines().count());
}

#[test]
fn diagram_with_theta() {
    let o = kacmod(&["diagram", RUNNING, "--theta", "1,0,3,0"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("labels:        1:1+1 3:9+9"), "{out}");
    assert!(out.contains("[3]"));
}

#[test]
fn diagram_json_carries_picture() {
    let o = kacmod(&["diagram", "1|1", "--margin", "1", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["diagram"]["shift"], 1);
    assert!(v["labeling"].is_null());
    assert!(v["ascii"].as_str().unwrap().contains("[ ]"));
}

#[test]
fn verify_passes() {
    let o = kacmod(&["verify", RUNNING]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 5);
    assert!(out.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn verify_json_small_weight_runs_oracle() {
    let o = kacmod(&["verify", "3,1|1,3", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 6);
}

#[test]
fn bad_input_exits_one() {
    for w in ["1,2|x", "1,2|1,2", "1,2"] {
        let o = kacmod(&["factors", w]);
        assert_eq!(o.status.code(), Some(1), "{w}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    }
}

#[test]
fn batch_mode_skips_comments() {
    let o = kacmod_stdin(&["factors"], "1|1\n\n# comment\n3,1|1,3\n");
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("# 1|1\n"));
    assert!(out.contains("\n# 3,1|1,3\n"));
}

#[test]
fn batch_json_is_one_document_per_line() {
    let o = kacmod_stdin(&["theta", "--format", "json"], "1|1\nbad\n3,1|1,3\n");
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let docs: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(docs.len(), 2);
    assert_eq!(docs[0].as_array().unwrap().len(), 2);
}
