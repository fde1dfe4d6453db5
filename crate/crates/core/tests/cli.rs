use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_sesqui");

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

/// Exit code and parsed stdout (`Null` when empty).
fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(BIN).args(args).env_remove("SESQUI_BUDGET").output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v = if stdout.trim().is_empty() { Value::Null } else { serde_json::from_str(&stdout).unwrap() };
    (out.status.code().unwrap(), v)
}

fn p(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn hermitian_check_on_hyperbolic_plane() {
    let (code, v) = run(&["hermitian-check", &p("f3_plane.json"), "--epsilon", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["hermitian"], true);
    assert_eq!(v["schema_version"], 1);
    let (code, v) = run(&["hermitian-check", &p("f3_plane.json"), "--epsilon", "-1"]);
    assert_eq!((code, &v["hermitian"]), (1, &Value::Bool(false)));
}

#[test]
fn odd_degree_descent_over_f3() {
    let (code, v) = run(&["springer-check", &p("f3.json"), "--degree", "3", "--rank-bound", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["collapses"].as_array().unwrap().len(), 0);
    assert_eq!(v["classes"], 14);
}

#[test]
fn even_degree_is_rejected_unless_requested() {
    let (code, v) = run(&["springer-check", &p("f3.json"), "--degree", "2", "--rank-bound", "1"]);
    assert_eq!((code, v), (2, Value::Null));
    let (code, v) = run(&["springer-check", &p("f3.json"), "--degree", "2", "--rank-bound", "1", "--allow-even"]);
    assert_eq!(code, 1);
    assert_eq!(v["collapses"].as_array().unwrap().len(), 1);
}

#[test]
fn one_and_two_are_not_isometric_over_f3() {
    let (code, v) = run(&["isometric", &p("f3_one.json"), &p("f3_two.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "not isometric");
    let (code, v) = run(&["isometric", &p("f3_one_two.json"), &p("f3_plane.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["isometric"], true);
}

#[test]
fn budget_exhaustion_exits_3() {
    let (code, _) = run(&["--budget", "10", "witt-table", &p("f3.json"), "--rank-bound", "2"]);
    assert_eq!(code, 3);
    let out = Command::new(BIN)
        .args(["witt-table", &p("f3.json"), "--rank-bound", "2"])
        .env("SESQUI_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(run(&["no-such-verb"]).0, 2);
    assert_eq!(run(&["validate-algebra", "/nonexistent.json"]).0, 2);
    assert_eq!(run(&["cancellation-check", &p("f3_one.json")]).0, 2);
    assert_eq!(run(&["witt-table", &p("q.json"), "--rank-bound", "1"]).0, 2);
}

#[test]
fn witt_tables() {
    let (code, v) = run(&["witt-table", &p("f3.json"), "--rank-bound", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["classes"].as_array().unwrap().len(), 5);
    assert_eq!(v["witt_class_count"], 4);
    let (_, v) = run(&["witt-table", &p("f9_frobenius.json"), "--rank-bound", "2"]);
    assert_eq!((v["classes"].as_array().unwrap().len(), &v["witt_class_count"]), (3, &Value::from(2)));
}

#[test]
fn functors_and_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let da = dir.path().join("da.json");
    let code = Command::new(BIN)
        .args(["f-functor", &p("f3_one_two.json"), "--out"])
        .arg(&da)
        .status()
        .unwrap()
        .code();
    assert_eq!(code, Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&da).unwrap()).unwrap();
    let form_file = dir.path().join("form.json");
    std::fs::write(&form_file, report["form"].to_string()).unwrap();
    let (code, v) = run(&["roundtrip-check", form_file.to_str().unwrap()]);
    assert_eq!((code, &v["holds"]), (0, &Value::Bool(true)));
    let (code, v) = run(&["g-functor", form_file.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (_, original) = run(&["sum", &p("f3_one.json"), &p("f3_two.json")]);
    assert_eq!(v["form"], original["form"]);
}

#[test]
fn hyperbolicity_and_transfer() {
    let (code, v) = run(&["is-hyperbolic", &p("f3_one_two.json")]);
    assert_eq!((code, &v["hyperbolic"]), (0, &Value::Bool(true)));
    let (_, v) = run(&["hyperbolic", "--spec", &p("f3_spec.json")]);
    assert_eq!(v["form"]["rank"], 2);
    let (_, v) = run(&["hyperbolic", "--standard", &p("f3.json"), "--rank", "1", "--epsilon", "-1"]);
    assert_eq!(v["form"]["grams"][0][0][1], serde_json::json!([2]));
    let (code, v) = run(&["transfer", &p("f3_one.json"), &p("f3_one_two.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["form"]["rank"], 2);
    let (code, v) = run(&["verify-5-1-2", &p("f3_one.json")]);
    assert_eq!((code, &v["bijection"], &v["h_class_count"]), (0, &Value::Bool(true), &Value::from(2)));
    let (_, v) = run(&["enumerate-h", &p("f9_frobenius.json")]);
    assert_eq!(v["count"], 1);
}

#[test]
fn extension_and_restriction() {
    let (code, v) = run(&["extend", &p("f3_one_two.json"), &p("f27_over_f3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["form"]["algebra"]["base"]["e"], 3);
    let (code, v) = run(&["restriction-check", &p("f3.json"), "--degree", "3", "--rank-bound", "2", "--square-rank", "2"]);
    assert_eq!((code, &v["passed"]), (0, &Value::Bool(true)));
    let (code, v) = run(&["cancellation-check", "--sweep", &p("f3.json"), "--max-rank", "1"]);
    assert_eq!((code, v["counterexamples"].as_array().unwrap().len()), (0, 0));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let one = run(&["--threads", "1", "springer-check", &p("f3.json"), "--degree", "3", "--rank-bound", "2"]);
    let four = run(&["--threads", "4", "springer-check", &p("f3.json"), "--degree", "3", "--rank-bound", "2"]);
    assert_eq!(one, four);
}
