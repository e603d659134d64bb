use std::process::{Command, Output};

use serde_json::Value;

fn multistat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multistat"))
        .args(args)
        .env_remove("MULTISTAT_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = multistat(&all);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn single_value(args: &[&str]) -> String {
    let v = json(args);
    v["payload"]["rows"][0][0].as_str().expect("string cell").to_string()
}

fn schema() -> jsonschema::JSONSchema {
    let text = include_str!("../schema/output.schema.json");
    let schema: Value = serde_json::from_str(text).expect("schema parses");
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

#[test]
fn documented_examples() {
    for method in ["table", "denumerant", "binomial"] {
        assert_eq!(
            single_value(&["inv", "10", "--d", "1,2,3,4,5,6,7,8,9", "--k", "12", "--method", method]),
            "47043"
        );
    }
    assert_eq!(single_value(&["psi", "6", "6"]), "0");
    assert_eq!(single_value(&["flags", "3", "--d", "1,2", "--p", "2", "--count-only"]), "21");
}

#[test]
fn psi_methods_and_values() {
    for method in ["subset", "fn", "exp-log"] {
        assert_eq!(single_value(&["psi", "6", "7", "--method", method]), "2");
    }
    assert_eq!(single_value(&["psi", "6", "5", "--method", "pentagonal"]), "1");
    let out = multistat(&["psi", "6", "9", "--method", "pentagonal"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn other_commands() {
    assert_eq!(single_value(&["qbinom", "4", "2", "--eval", "2"]), "35");
    assert_eq!(single_value(&["qmultinom", "3", "--d", "1,2", "--eval", "2"]), "21");
    assert_eq!(single_value(&["denumerant", "--w", "1,1,1,1", "3"]), "20");
    let b = json(&["bounds", "5", "--d", "1,2", "--k", "6"]);
    assert_eq!(b["payload"]["columns"], serde_json::json!(["lower", "upper", "value"]));
    assert_eq!(b["payload"]["rows"][0][1], "104");
    let t = json(&["tau", "4", "2", "3"]);
    assert_eq!(t["payload"]["rows"][0], serde_json::json!(["{1,3}", "{2,4}", "3"]));
    let cells = json(&["flags", "3", "--d", "1", "--p", "2", "--cells"]);
    let sizes: u64 = cells["payload"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r[2].as_str().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(sizes, 7);
    let listing = json(&["flags", "2", "--d", "1", "--p", "3"]);
    assert_eq!(listing["payload"]["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn csv_distribution_output() {
    let out = multistat(&["--format", "csv", "invdist", "3", "--d", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "k,count\n0,1\n1,1\n2,1\n");
    let out = multistat(&["invdist", "7", "--d", "2,4", "--format", "csv"]);
    let text = stdout(&out);
    assert!(!text.contains('\r'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[..6], ["k,count", "0,1", "1,2", "2,5", "3,8", "4,13"]);
}

#[test]
fn json_matches_schema_with_string_integers() {
    let schema = schema();
    let commands: &[&[&str]] = &[
        &["qbinom", "6", "3"],
        &["qbinom", "40", "20", "--eval", "10"],
        &["qmultinom", "5", "--d", "1,3"],
        &["invdist", "5", "--d", "2"],
        &["inv", "6", "--d", "1,2", "--k", "4"],
        &["psi", "8", "10"],
        &["denumerant", "--w", "1,2,3", "12"],
        &["bounds", "10", "--d", "1", "--k", "12"],
        &["flags", "3", "--d", "1,2", "--p", "2"],
        &["flags", "3", "--d", "1,2", "--p", "2", "--count-only"],
        &["flags", "3", "--d", "1,2", "--p", "2", "--cells"],
        &["tau", "6", "2", "5"],
        &["verify", "--suite", "qanalogue", "--max-n", "3"],
    ];
    for args in commands {
        let v = json(args);
        let msgs: Vec<String> = match schema.validate(&v) {
            Ok(()) => Vec::new(),
            Err(errors) => errors.map(|e| e.to_string()).collect(),
        };
        assert!(msgs.is_empty(), "{args:?}: {msgs:?}");
    }
    // 41 digits survive the round trip
    let big = single_value(&["qbinom", "40", "20", "--eval", "10"]);
    assert!(big.len() > 30 && big.bytes().all(|b| b.is_ascii_digit()));
    let bad = serde_json::json!({"kind": "psi", "parameters": {"n": 6}, "payload": {"columns": ["value"], "rows": [[0]]}});
    assert!(!schema.is_valid(&bad));
}

#[test]
fn exit_codes() {
    let malformed = multistat(&["qmultinom", "4", "--d", "2,x"]);
    assert_eq!(malformed.status.code(), Some(1));
    assert!(!stderr(&malformed).is_empty());
    assert_eq!(multistat(&["qmultinom", "4", "--d", "3,2"]).status.code(), Some(1));
    assert_eq!(multistat(&["psi", "6", "6", "--bogus"]).status.code(), Some(1));
    assert_eq!(multistat(&["flags", "3", "--d", "1", "--p", "4"]).status.code(), Some(1));
    assert_eq!(multistat(&["tau", "6", "2", "9"]).status.code(), Some(1));
    assert_eq!(multistat(&["--help"]).status.code(), Some(0));
    assert_eq!(multistat(&["--version"]).status.code(), Some(0));

    let capped = multistat(&["flags", "4", "--d", "1,2,3", "--p", "3", "--cap", "100"]);
    assert_eq!(capped.status.code(), Some(2));
    assert!(stderr(&capped).contains("cap"));
    assert_eq!(multistat(&["psi", "12", "3", "--method", "subset", "--cap", "100"]).status.code(), Some(2));

    let env_capped = Command::new(env!("CARGO_BIN_EXE_multistat"))
        .args(["flags", "4", "--d", "2", "--p", "2", "--count-only"])
        .env("MULTISTAT_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(env_capped.status.code(), Some(2));

    assert_eq!(multistat(&["verify", "--suite", "all", "--max-n", "3"]).status.code(), Some(0));
    assert_eq!(multistat(&["verify", "--suite", "nope"]).status.code(), Some(1));
}

#[test]
fn trailing_n_is_dropped_with_notice() {
    let with = multistat(&["qmultinom", "3", "--d", "1,3", "--format", "csv"]);
    let without = multistat(&["qmultinom", "3", "--d", "1", "--format", "csv"]);
    assert_eq!(with.status.code(), Some(0));
    assert_eq!(with.stdout, without.stdout);
    assert!(stderr(&with).contains("dropping"));
    assert!(stderr(&without).is_empty());
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let args = ["--format", "json", "flags", "3", "--d", "1", "--p", "3"];
    assert_eq!(multistat(&args).stdout, multistat(&args).stdout);

    let dir = std::env::temp_dir().join(format!("multistat-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dist.csv");
    let out = multistat(&["invdist", "3", "--d", "2", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "k,count\n0,1\n1,1\n2,1\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn jobs_flag_keeps_results_identical() {
    let one = multistat(&["--jobs", "1", "verify", "--suite", "inversions", "--max-n", "4"]);
    let many = multistat(&["--jobs", "4", "verify", "--suite", "inversions", "--max-n", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(multistat(&["--jobs", "0", "psi", "3", "1"]).status.code(), Some(1));
}
