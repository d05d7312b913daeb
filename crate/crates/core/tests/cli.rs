use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_s3knots")).args(args).output().expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn json_err(args: &[&str], code: i32) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

#[test]
fn trefoil_alexander() {
    let v = json_ok(&["braid", "alexander", "--word", r#"{"n":2,"w":[1,1,1]}"#]);
    assert_eq!(v["alexander"], serde_json::json!({"lowest": -1, "coeffs": [1, -1, 1]}));
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["inputs_echo"]["word"]["w"], serde_json::json!([1, 1, 1]));
}

#[test]
fn geodesic_of_trace_three() {
    let v = json_ok(&["markov", "geodesic", "--trace", "3"]);
    let l = v["length"].as_f64().unwrap();
    let tol = v["tolerances"]["length"].as_f64().unwrap();
    assert!(tol <= 1e-10);
    assert!((l - 1.9248473002).abs() < 1e-10);
    let v = json_ok(&["markov", "geodesic", "--trace", "-3"]);
    assert!((v["length"].as_f64().unwrap() - l).abs() < 1e-15);
    let v = json_ok(&["markov", "geodesic", "--trace", "1,2"]);
    assert!(v["length"][0].as_f64().unwrap() > 0.0);
}

#[test]
fn reeb_check_at_a_pole() {
    let v = json_ok(&["flow", "check", "--point", "1,0,0,0"]);
    assert_eq!(v["alpha"].as_f64(), Some(1.0));
    assert_eq!(v["defect"].as_f64(), Some(0.0));
    assert_eq!(v["pass"], true);
    let v = json_ok(&["flow", "check", "--point", "-0.6,0,0,0.8"]);
    assert_eq!(v["pass"], true);
}

#[test]
fn seeded_output_is_byte_identical() {
    let a = run(&["flow", "check", "--seed", "42", "--count", "200"]);
    let b = run(&["flow", "check", "--seed", "42", "--count", "200"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["inputs_echo"]["seed"], 42);
}

#[test]
fn weighted_flow_gives_trefoil() {
    let v = json_ok(&[
        "flow",
        "knot-type",
        "--params",
        r#"{"kind":"weighted","r1":0.5,"r2":0.3333333333333333}"#,
        "--steps",
        "20000",
    ]);
    assert_eq!(v["knot_type"]["p"], 2);
    assert_eq!(v["knot_type"]["q"], 3);
    assert_eq!(v["alexander"]["coeffs"], serde_json::json!([1, -1, 1]));
    let v = json_ok(&["flow", "knot-type", "--omega", "3,5"]);
    assert_eq!(v["braid"]["n"], 3);
}

#[test]
fn trace_exports_samples() {
    let v = json_ok(&["flow", "trace", "--point", "1,0,0,0", "--steps", "7000", "--dt", "1e-3", "--every", "1000"]);
    let samples = v["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 8);
    for key in ["t", "x1", "y1", "x2", "y2", "h", "F"] {
        assert!(samples[0].get(key).is_some(), "{key}");
    }
    let period = v["period"].as_f64().unwrap();
    assert!((period - std::f64::consts::TAU).abs() < 1e-6);
    assert!(v["energy_drift"].as_f64().unwrap() < 1e-9);
}

#[test]
fn braid_subcommands() {
    let v = json_ok(&["braid", "invariants", "--word", r#"{"n":3,"w":[1,-2,1,-2]}"#]);
    assert_eq!(v["invariants"]["beta"], -3);
    let v = json_ok(&["braid", "reduce", "--word", r#"{"n":3,"w":[1,1,1,2]}"#]);
    assert_eq!(v["reduced"]["n"], 2);
    assert_eq!(v["invariants_after"]["beta"], v["invariants_before"]["beta"]);
}

#[test]
fn cable_subcommands() {
    let v = json_ok(&["cable", "build", "--params", r#"{"stages":[[2,3],[2,13]],"orientation":1}"#]);
    assert_eq!(v["braid"]["n"], 4);
    let v = json_ok(&["cable", "validate", "--params", r#"{"stages":[[3,2],[2,4]],"orientation":1}"#]);
    assert_eq!(v["valid"], false);
    assert_eq!(v["violations"].as_array().unwrap().len(), 2);
}

#[test]
fn lorenz_subcommands() {
    let v = json_ok(&["lorenz", "template", "--word", "LR"]);
    assert_eq!(v["invariants"]["n"], 2);
    assert_eq!(v["invariants"]["positive"], true);
    let v = json_ok(&["lorenz", "simulate", "--steps", "2000", "--every", "500"]);
    assert_eq!(v["samples"].as_array().unwrap().len(), 5);
    let v = json_ok(&["lorenz", "encode", "--steps", "30000", "--params", r#"{"r":28}"#]);
    assert_eq!(v["inputs_echo"]["params"]["sigma"], 10.0);
    let symbols = v["symbols"].as_str().unwrap();
    assert!(!symbols.is_empty() && symbols.chars().all(|c| c == 'L' || c == 'R'));
    json_err(&["lorenz", "template", "--word", "LXR"], 1);
}

#[test]
fn markov_subcommands() {
    let v = json_ok(&["markov", "tree", "--depth", "3"]);
    let nums: Vec<u64> = v["numbers"].as_array().unwrap().iter().map(|n| n.as_u64().unwrap()).collect();
    assert!(nums.starts_with(&[1, 2, 5, 13]));
    let v = json_ok(&["markov", "matrices", "--trace", "3,3,3"]);
    assert_eq!(v["a"], serde_json::json!({"ring": "Q", "entries": ["2", "1", "1", "1"]}));
    assert_eq!(v["checks"]["trace_commutator"], "-2");
    json_err(&["markov", "matrices", "--trace", "3,3,4"], 1);
}

#[test]
fn group_checks() {
    let v = json_ok(&["group", "check", "--name", "figure-eight"]);
    assert_eq!(v["report"]["all_pass"], true);
    let v = json_ok(&["group", "check", "--name", "figure-eight", "--conjugate-root"]);
    assert_eq!(v["report"]["all_pass"], true);
    let v = json_ok(&["group", "check", "--name", "figure-eight-as-printed"]);
    assert_eq!(v["report"]["all_pass"], false);
    let params = r#"{"presentation":"<a,b | aba = bab>","assignment":{"a":{"ring":"Z","entries":[1,1,0,1]},"b":{"ring":"Z","entries":[1,0,-1,1]}}}"#;
    let v = json_ok(&["group", "check", "--params", params]);
    assert_eq!(v["report"]["all_pass"], true);
    json_err(&["group", "check", "--name", "nope"], 2);
    json_err(&["group", "check"], 2);
}

#[test]
fn kirby_apply() {
    let params = r#"{"link":{"labels":["K"],"matrix":[[3]]},"moves":[{"move":"blow_up","sign":-1},{"move":"slide","i":0,"j":1},{"move":"blow_down","i":1}]}"#;
    let v = json_ok(&["kirby", "apply", "--params", params]);
    let steps = v["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 3);
    assert_eq!(v["initial"]["det"], "3");
    let err = json_err(&["kirby", "apply", "--params", r#"{"link":{"labels":["K"],"matrix":[[3]]},"moves":[{"move":"blow_down","i":0}]}"#], 1);
    assert_eq!(err["error"]["module"], "kirby");
}

#[test]
fn usage_and_domain_errors() {
    let e = json_err(&["braid", "alexander", "--word", "{"], 2);
    assert_eq!(e["error"]["code"], "usage");
    json_err(&["braid", "alexander", "--word", r#"{"n":2,"w":[1]}"#, "--bogus"], 2);
    json_err(&["frobnicate"], 2);
    let e = json_err(&["braid", "alexander", "--word", r#"{"n":3,"w":[1]}"#], 1);
    assert_eq!(e["error"]["module"], "braid");
    let e = json_err(&["flow", "check", "--point", "2,0,0,0"], 1);
    assert_eq!(e["error"]["module"], "s3flow");
    assert!(run(&["--help"]).status.success());
    assert!(run(&["--version"]).status.success());
}

#[test]
fn payload_from_file_and_out_flag() {
    let dir = std::env::temp_dir().join(format!("s3knots-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("word.json");
    let output = dir.join("out.json");
    std::fs::write(&input, r#"{"n":2,"w":[1,1,1]}"#).unwrap();
    let out = run(&["braid", "alexander", "--word", input.to_str().unwrap(), "--out", output.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(v["alexander"]["coeffs"], serde_json::json!([1, -1, 1]));
    std::fs::remove_dir_all(&dir).unwrap();
}
