use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_numradius"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, json: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, json).unwrap();
    p.to_str().unwrap().to_string()
}

fn json_out(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const JORDAN: &str = r#"{"dim":2,"entries":[[[0,0],[1,0]],[[0,0],[0,0]]]}"#;
const DIAG_1_11I: &str = r#"{"dim":2,"entries":[[[1,0],[0,0]],[[0,0],[0,11]]]}"#;

#[test]
fn jordan_trace_radius() {
    let dir = TempDir::new().unwrap();
    let m = write(dir.path(), "jordan2.json", JORDAN);
    let v = json_out(&run(&["compute", "--matrix", &m, "--norm", "p:1", "--quantity", "wn"]));
    assert!((v["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!(v["argmax_theta"].is_number() && v["bracket"].is_number());
}

#[test]
fn closed_form_w2() {
    let dir = TempDir::new().unwrap();
    let m = write(dir.path(), "a_1_11i.json", DIAG_1_11I);
    let v = json_out(&run(&["compute", "--matrix", &m, "--quantity", "w2"]));
    assert!((v["value"].as_f64().unwrap() - 11.0).abs() < 1e-10);
}

#[test]
fn compute_leaves_input_untouched_and_is_byte_stable() {
    let dir = TempDir::new().unwrap();
    let m = write(dir.path(), "j.json", JORDAN);
    let a = run(&["compute", "--matrix", &m, "--norm", "p:3", "--quantity", "bounds"]);
    let b = run(&["compute", "--matrix", &m, "--norm", "p:3", "--quantity", "bounds"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(fs::read_to_string(&m).unwrap(), JORDAN);
}

#[test]
fn binary_predicates() {
    let dir = TempDir::new().unwrap();
    let p = write(
        dir.path(),
        "p.json",
        r#"{"dim":2,"entries":[[[1,0],[0,0]],[[0,0],[0,0]]]}"#,
    );
    let i = write(
        dir.path(),
        "i.json",
        r#"{"dim":2,"entries":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#,
    );
    let v = json_out(&run(&[
        "compute",
        "--matrix",
        &p,
        "--other",
        &i,
        "--norm",
        "p:1",
        "--quantity",
        "parallel",
    ]));
    assert_eq!(v["holds"], Value::Bool(true));
    let v = json_out(&run(&[
        "compute",
        "--matrix",
        &p,
        "--other",
        &i,
        "--norm",
        "p:2",
        "--quantity",
        "parallel",
    ]));
    assert_eq!(v["holds"], Value::Bool(false));
    let j = write(dir.path(), "j.json", JORDAN);
    let v = json_out(&run(&[
        "compute",
        "--matrix",
        &i,
        "--other",
        &j,
        "--norm",
        "p:1.5",
        "--quantity",
        "bj-orth",
    ]));
    assert_eq!(v["holds"], Value::Bool(true));
    let v = json_out(&run(&[
        "compute",
        "--matrix",
        &i,
        "--other",
        &i,
        "--quantity",
        "trace-cond",
        "--p",
        "3",
    ]));
    assert_eq!(v["holds"], Value::Bool(true));
    let v = json_out(&run(&["compute", "--matrix", &j, "--quantity", "w1-conds"]));
    assert_eq!(v["agree"], Value::Bool(true));
}

#[test]
fn usage_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let m = write(dir.path(), "j.json", JORDAN);
    assert_eq!(run(&["compute", "--matrix", &m]).status.code(), Some(2));
    assert_eq!(
        run(&["compute", "--matrix", &m, "--quantity", "wn", "--norm", "p:0.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["compute", "--matrix", &m, "--quantity", "parallel"])
            .status
            .code(),
        Some(2)
    );
    let missing = dir.path().join("missing.json");
    assert_eq!(
        run(&["compute", "--matrix", missing.to_str().unwrap(), "--quantity", "w"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--suite", "eq-1.1", "--dims", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn malformed_matrix_exits_3() {
    let dir = TempDir::new().unwrap();
    for (k, bad) in [r#"{"dim":2}"#, r#"{"dim":2,"entries":[[[1,0]]]}"#, "not json"]
        .iter()
        .enumerate()
    {
        let m = write(dir.path(), &format!("bad{k}.json"), bad);
        assert_eq!(
            run(&["compute", "--matrix", &m, "--quantity", "w"]).status.code(),
            Some(3),
            "{bad}"
        );
    }
}

#[test]
fn sample_round_trips_through_compute() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("g.json");
    let s = run(&["sample", "--ensemble", "ginibre:3:7", "--out", out.to_str().unwrap()]);
    assert!(s.status.success());
    let again = run(&["sample", "--ensemble", "ginibre:3:7"]);
    assert_eq!(fs::read(&out).unwrap(), again.stdout);
    let v = json_out(&run(&["compute", "--matrix", out.to_str().unwrap(), "--quantity", "w"]));
    assert!(v["value"].as_f64().unwrap() > 0.0);

    let pair = dir.path().join("pair.json");
    assert!(run(&[
        "sample",
        "--ensemble",
        "commuting_star_pair:3:1",
        "--out",
        pair.to_str().unwrap()
    ])
    .status
    .success());
    assert!(dir.path().join("pair.json.second").is_file());
}

#[test]
fn verify_writes_report_and_table() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let r = run(&[
        "verify",
        "--suite",
        "eq-1.1,rem-buzano,scrutiny-aluthge-w2",
        "--seed",
        "7",
        "--trials",
        "5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stderr));
    let table = String::from_utf8(r.stdout).unwrap();
    assert!(table.contains("counterexample-found"));
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let ids: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids, ["eq-1.1", "rem-buzano", "scrutiny-aluthge-w2"]);
    for r in v.as_array().unwrap() {
        for key in [
            "paper_anchor",
            "mode",
            "trials",
            "violations",
            "max_violation",
            "sharpness_ratio",
            "witnesses",
        ] {
            assert!(r.get(key).is_some(), "{key}");
        }
    }
}

#[test]
fn unknown_check_is_a_failed_report() {
    let r = run(&[
        "verify",
        "--suite",
        "eq-1.1,no-such-check",
        "--trials",
        "2",
        "--dims",
        "2",
    ]);
    assert_eq!(r.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&r.stdout).unwrap();
    assert_eq!(v[1]["status"], "error");
    assert_eq!(v[0]["status"], "pass");
}

#[test]
fn verify_all_smoke() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("all.json");
    let r = run(&[
        "verify",
        "--suite",
        "all",
        "--seed",
        "42",
        "--trials",
        "50",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stdout));
    assert!(out.is_file());
}
