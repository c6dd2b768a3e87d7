use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dicycles"))
        .args(args)
        .env("DICYCLES_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dicycles-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn gen_then_count_and_check() {
    let dir = scratch("gen");
    let g = dir.join("c3.txt");
    let g = g.to_str().unwrap();
    let out = run(&["gen", "--construction", "balanced_cycle_blowup", "--param", "3", "--n", "6", "-o", g]);
    assert!(out.status.success());
    let rep = json(&out);
    assert_eq!(rep["closed_form_count"]["value"], "8");
    assert_eq!(rep["manifest"]["outputs"].as_array().unwrap().len(), 2);
    let sidecar: Value = serde_json::from_str(&std::fs::read_to_string(format!("{g}.json")).unwrap()).unwrap();
    assert_eq!(sidecar["closed_form_count"]["kind"], "exact");

    let out = run(&["count", "--in", g, "--k", "3", "--paths", "2,3"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["copies"], "8");

    let out = run(&["check", "--in", g, "--forbid", "C4,C5"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["check", "--in", g, "--no-closed-walk", "6"]);
    assert_eq!(out.status.code(), Some(1), "a C3 blow-up has closed 6-walks");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn frobenius_reports_witness() {
    let out = run(&["frobenius", "--l", "8", "--gens", "3,5"]);
    assert!(out.status.success());
    let rep = json(&out);
    assert_eq!(rep["representable"], true);
    assert_eq!(rep["witness"], serde_json::json!([1, 1]));
    assert_eq!(rep["brauer_bound"], 7);
}

#[test]
fn predict_marks_regime() {
    let rep = json(&run(&["predict", "--k", "3", "--l", "4", "--n", "6"]));
    assert_eq!(rep["regime"], "exact");
    assert_eq!(rep["exact"], "8");
    let rep = json(&run(&["predict", "--k", "4", "--l", "9", "--n", "8", "--mode", "directed"]));
    assert_eq!(rep["regime"], "order-only");
    assert_eq!(rep["lower_bound"]["coefficient"], "1/32");
}

#[test]
fn search_small_case() {
    let out = run(&["search", "--n", "5", "--k", "3", "--forbid", "C4"]);
    assert!(out.status.success());
    let rep = json(&out);
    assert_eq!(rep["max_copies"], "4");
}

#[test]
fn identical_argv_gives_identical_report() {
    let args = ["search", "--n", "7", "--k", "3", "--forbid", "C4", "--local", "--budget", "20000", "--seed", "3"];
    let strip = |mut v: Value| {
        v["manifest"].as_object_mut().unwrap().remove("wall_time_s");
        v
    };
    let a = strip(json(&run(&args)));
    let b = strip(json(&run(&args)));
    assert_eq!(a, b);
    assert_eq!(a["manifest"]["seeds"], serde_json::json!([3]));
}

#[test]
fn errors_are_json_on_stderr() {
    let out = run(&["count", "--in", "/definitely/not/here.txt", "--k", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "io");

    let out = run(&["frobenius", "--l", "x"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "usage");

    let out = run(&["predict", "--k", "3", "--l", "3", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn reproduce_quick_targets() {
    for target in ["c5c7", "frobenius", "iterated", "directed"] {
        let out = run(&["reproduce", target]);
        assert!(out.status.success(), "{target}: {}", String::from_utf8_lossy(&out.stdout));
        assert_eq!(json(&out)["passed"], true);
    }
    let list = json(&run(&["reproduce", "list"]));
    assert_eq!(list["targets"].as_array().unwrap().len(), 12);
    assert_eq!(run(&["reproduce", "13"]).status.code(), Some(2));
}
