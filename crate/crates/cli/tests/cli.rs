use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fermat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fermat")).args(args).env("NO_COLOR", "1").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(text.lines().next().expect("one line of output")).expect("JSON output")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fermat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn cohomology_report() {
    let out = fermat(&["cohomology", "--d", "2", "--p", "2", "--n", "5", "--r", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["r1"], serde_json::json!(0));
    assert_eq!(v["kodaira"], serde_json::json!(0));
    assert_eq!(v["surfaceClass"], "K3");
    assert_eq!(v["isCalabiYau"], true);
    assert_eq!(v["h"][0], serde_json::json!(18));
    assert_eq!(v["schemaVersion"], serde_json::json!(1));

    let v = json(&fermat(&["cohomology", "--d", "2", "--p", "3", "--n", "5", "--m", "200"]));
    assert_eq!(v["plurigenus"], serde_json::json!(4835754));
    assert_eq!(v["kodaira"], serde_json::json!(2));
}

#[test]
fn hyperbolicity_reports() {
    let v = json(&fermat(&["hyperbolicity", "--d", "2", "--p", "3", "--n", "4"]));
    assert_eq!(v["status"], "NotAlgebraicallyHyperbolic");
    assert_eq!(v["case"], "2");
    assert_eq!(v["witness"]["genus"], serde_json::json!(1));
    let v = json(&fermat(&["hyperbolicity", "--d", "2", "--p", "2", "--n", "5"]));
    assert_eq!(v["case"], "K3Exception");
    let v = json(&fermat(&["hyperbolicity", "--d", "3", "--p", "5", "--n", "7"]));
    assert_eq!(v["status"], "Unknown");
}

#[test]
fn enumerate_and_classify() {
    let v = json(&fermat(&["classify", "--d", "2", "--p", "2", "--n", "6", "--m", "3"]));
    assert_eq!(v["count"], serde_json::json!(30));
    assert_eq!(v["orbits"].as_array().unwrap().len(), 1);
    let v = json(&fermat(&["enumerate", "--d", "2", "--p", "2", "--n", "6", "--m", "3", "--normalized"]));
    assert_eq!(v["count"], serde_json::json!(30));
    let v = json(&fermat(&["enumerate", "--d", "2", "--p", "2", "--n", "5", "--m", "2"]));
    assert_eq!(v["bounds"]["verdict"], "Empty");
    assert_eq!(v["count"], serde_json::json!(0));
}

#[test]
fn fixed_points_of_an_element() {
    let v = json(&fermat(&["fixed-points", "--d", "2", "--p", "3", "--n", "3", "--element", "1,1,2,0"]));
    assert_eq!(v["hasFixedPoints"], true);
    let v = json(&fermat(&["fixed-points", "--d", "2", "--p", "5", "--n", "3", "--element", "0,1,2,3"]));
    assert_eq!(v["hasFixedPoints"], false);
}

#[test]
fn subgroup_file_input() {
    let path = scratch("k.json", r#"{"p":2,"n":6,"basis":[[1,1,0,1,0,0,0],[1,0,1,0,1,0,0],[0,1,1,0,0,1,0]]}"#);
    let out = fermat(&["fixed-points", "--d", "2", "--p", "2", "--n", "6", "--subgroup", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["actsFreely"], true);
}

#[test]
fn invariants_report() {
    let gens = "1,1,0,1,0,0,0;1,0,1,0,1,0,0;0,1,1,0,0,1,0";
    let v = json(&fermat(&["invariants", "--d", "2", "--p", "2", "--n", "6", "--seed", "1", "--generators", gens]));
    assert_eq!(v["generators"].as_array().unwrap().len(), 13);
    assert_eq!(v["actsFreely"], true);
    assert_eq!(v["linear_relations"][3]["text"], "u3 = -λ3,1·u1 - λ3,2·u2 - 1");
}

#[test]
fn fiber_lines() {
    let out = fermat(&["fiber", "--d", "2", "--p", "2", "--n", "4", "--seed", "3", "--count", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 32);
    let header: Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(header["points"], serde_json::json!(32));
    for l in &lines[1..] {
        let rec: Value = serde_json::from_str(l).unwrap();
        assert!(rec["residual"].as_f64().unwrap() <= 1e-9);
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["fiber", "--d", "2", "--p", "3", "--n", "4", "--seed", "17"][..],
        &["classify", "--d", "2", "--p", "2", "--n", "6", "--m", "3", "--list"][..],
        &["arrangement", "--d", "3", "--n", "6", "--seed", "4", "--p", "2"][..],
        &["invariants", "--d", "2", "--p", "2", "--n", "6", "--seed", "9", "--generators", "1,1,0,1,0,0,0;1,0,1,0,1,0,0;0,0,0,1,1,1,0"][..],
    ] {
        let a = fermat(args);
        let b = fermat(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn text_format() {
    let out = fermat(&["--format", "text", "hyperbolicity", "--d", "2", "--p", "2", "--n", "4"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().any(|l| l == "status: NotAlgebraicallyHyperbolic"));
    assert!(!text.contains('\u{1b}'));
}

#[test]
fn invalid_input_exits_2() {
    let cases: [&[&str]; 7] = [
        &["cohomology", "--d", "2", "--p", "1", "--n", "5"],
        &["cohomology", "--d", "2", "--p", "3", "--n", "2"],
        &["fixed-points", "--d", "2", "--p", "3", "--n", "3", "--element", "1,2"],
        &["fixed-points", "--d", "2", "--p", "3", "--n", "3", "--element", "1,x,0,0"],
        &["enumerate", "--d", "2", "--p", "4", "--n", "5", "--m", "3"],
        &["arrangement", "--d", "2", "--n", "5"],
        &["cohomology", "--d", "2"],
    ];
    for args in cases {
        assert_eq!(fermat(args).status.code(), Some(2), "{args:?}");
    }
    let missing = fermat(&["arrangement", "--d", "2", "--n", "5", "--lambda", "/nonexistent/lambda.json"]);
    assert_eq!(missing.status.code(), Some(2));
    let bad = scratch("bad_lambda.json", r#"{"n":5,"d":2,"lambda":[["1"]]}"#);
    let out = fermat(&["arrangement", "--d", "2", "--n", "5", "--lambda", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resource_caps_exit_3() {
    let out = fermat(&["enumerate", "--d", "2", "--p", "3", "--n", "8", "--m", "4", "--cap-subspaces", "1000"]);
    assert_eq!(out.status.code(), Some(3));
    let out = fermat(&["fiber", "--d", "2", "--p", "3", "--n", "4", "--seed", "1", "--cap-elements", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reference_failures_exit_4() {
    let corrupted = scratch("corrupt.json", "{\"schemaVersion\": 1, \"checks\": [");
    let out = fermat(&["reproduce", "--golden", corrupted.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));

    let wrong = scratch(
        "wrong.json",
        r#"{"schemaVersion":1,"checks":[{"group":"genus","id":"rh","kind":"rh_genus","input":{"degree":4,"orders":[2,2,2]},"expected":5}]}"#,
    );
    let out = fermat(&["reproduce", "--golden", wrong.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["allPassed"], false);

    let out = fermat(&["reproduce", "--filter", "nonexistent-group"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reproduce_single_group() {
    let out = fermat(&["reproduce", "--filter", "genus"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["allPassed"], true);
    assert_eq!(v["groups"]["genus"]["failed"], serde_json::json!(0));
}
