use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn wia(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wia")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim().to_string()
}

fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas/v1")
}

fn assert_valid(schema: &str, report: &Value) {
    let path = schema_dir().join(format!("{schema}.json"));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let v = jsonschema::validator_for(&s).expect("schema compiles");
    let errors: Vec<String> = v.iter_errors(report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{report} against {schema}: {errors:?}");
}

/// Runs with --json, checks the exit code and validates the report.
fn json_report(schema: &str, args: &[&str], code: i32) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let o = wia(&full);
    assert_eq!(o.status.code(), Some(code), "{args:?}: {}", stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_valid(schema, &v);
    v
}

#[test]
fn documented_examples() {
    let o = wia(&["hyp", "--json", "--field", "Q", "tens(qs(-1,-1),qs(-1,-1))"]);
    assert_eq!(stdout(&o), r#"{"status":"False","criterion":"bqhyp-split-factor"}"#);
    assert_eq!(o.status.code(), Some(0));

    let o = wia(&["torsion-order", "--field", "Q", "diag(1,-7)"]);
    assert_eq!(stdout(&o), "4");

    let o = wia(&["sign", "--field", "Q(sqrt 2)", "diag(1+0s, 0+1s)"]);
    assert_eq!(stdout(&o), "{Plus: 2, Minus: 0}");
}

#[test]
fn exit_codes() {
    assert_eq!(wia(&["hyp", "qo(1,1)"]).status.code(), Some(0));
    assert_eq!(wia(&["hyp", "qo(-1,-1)"]).status.code(), Some(0));
    assert_eq!(wia(&["hyp", "tens(u(3),qs(-1,-1))"]).status.code(), Some(3));
    let bad = wia(&["hyp", "qo(1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("ParseError"));
    assert_eq!(wia(&["witt", "--field", "Q(sqrt 2)", "diag(1,s)"]).status.code(), Some(1));
    assert_eq!(wia(&[]).status.code(), Some(1));
}

#[test]
fn every_verb_matches_its_schema() {
    let v = json_report("sign", &["sign", "qs(-1,-1)"], 0);
    assert_eq!(v["Canonical"], 2);
    json_report("sign", &["sign", "--field", "Q(sqrt 2)", "ad(diag(1,s))"], 0);
    let v = json_report("witt", &["witt", "diag(1,1,-2,3)"], 0);
    assert_eq!(v["witt_index"], 1);
    json_report("verdict", &["hyp", "nx(2,qo(-1,-1))"], 0);
    json_report("verdict", &["hyp", "diag(1,-1,2,-2)"], 0);
    json_report("verdict", &["hyp", "tens(u(3),qs(-1,-1))"], 3);
    let v = json_report("weak-hyp", &["weak-hyp", "qo(-1,-1)"], 0);
    assert_eq!(v["witness_n"], 1);
    json_report("weak-hyp", &["weak-hyp", "qs(-1,-1)"], 0);
    let v = json_report("torsion-order", &["torsion-order", "diag(1,1)"], 0);
    assert_eq!(v["torsion_order"], "infinite");
    let v = json_report("t-hyp", &["t-hyp", "--preord", "", "diag(1,-7)"], 0);
    assert_eq!(v["hyperbolic"], true);
    let v = json_report("t-hyp", &["t-hyp", "--field", "Q(sqrt 2)", "--preord", "-s", "diag(1,-s)"], 0);
    assert_eq!(v["hyperbolic"], false);
    let v = json_report("classify", &["classify", "--field", "Q(sqrt 2)", "--ordering", "minus", "qs(s,-1)"], 0);
    assert_eq!(v["case_label"], "d");
    json_report("classify", &["classify", "u(-1)"], 0);
    let v = json_report("trace", &["trace", "qs(-1,-1)"], 0);
    assert_eq!(v["dim"], 4);
    let v = json_report("iso-quat", &["iso-quat", "qo(2,3)", "qo(8,3)"], 0);
    assert_eq!(v["isomorphic"], true);
    json_report("iso-quat", &["iso-quat", "qs(-1,-1)", "qs(-1,3)"], 0);
    let v = json_report("profile", &["profile", "qo(2,3)"], 0);
    assert_eq!(v["index"], 2);
    json_report("profile", &["profile", "tens(u(-1),qs(-1,-1))"], 0);
    json_report("verdict", &["hyp-sqrt", "--adjoin", "-1", "qs(-1,-1)"], 0);
    let v = json_report("isotropic", &["isotropic", "diag(1,1,1,1,-7)"], 0);
    assert_eq!(v["vector"], serde_json::json!(["2", "1", "1", "1", "1"]));
    json_report("isotropic", &["isotropic", "diag(1,1)"], 0);
    let v = json_report("error", &["hyp", "qo(1"], 1);
    assert_eq!(v["error"]["code"], "ParseError");
    json_report("error", &["classify", "--ordering", "plus", "qo(2,3)"], 1);
}

#[test]
fn budget_flags_and_config() {
    // the first hit for <1,1,1,1,-7> has height 2
    let o = wia(&["isotropic", "--json", "--height", "1", "--rounds", "1", "diag(1,1,1,1,-7)"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vector"], Value::Null);
    assert_eq!(v["isotropic"], true);

    let dir = std::env::temp_dir().join(format!("wia-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("budget.toml");
    std::fs::write(&cfg, "height = 1\nrounds = 1\n").unwrap();
    let o = wia(&["isotropic", "--json", "--config", cfg.to_str().unwrap(), "diag(1,1,1,1,-7)"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vector"], Value::Null);
    // flags override the file
    let o = wia(&["isotropic", "--json", "--config", cfg.to_str().unwrap(), "--height", "2", "diag(1,1,1,1,-7)"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vector"], serde_json::json!(["2", "1", "1", "1", "1"]));
    std::fs::write(&cfg, "height = \"tall\"\n").unwrap();
    assert_eq!(wia(&["isotropic", "--config", cfg.to_str().unwrap(), "diag(1,-1)"]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn batch_mode_keeps_order_and_aggregates_codes() {
    let dir = std::env::temp_dir().join(format!("wia-batch-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("queries.txt");
    let mut lines = vec!["# comment".to_string()];
    for k in 1..=20 {
        lines.push(format!("torsion-order \"diag(1,-{k})\""));
    }
    std::fs::write(&file, lines.join("\n")).unwrap();
    let o = wia(&["--batch", file.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let out: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(out.len(), 20);
    for (k, v) in (1..=20).zip(&out) {
        assert_valid("torsion-order", v);
        let o = v["torsion_order"].as_u64().unwrap();
        if [1, 4, 9, 16].contains(&k) {
            assert_eq!(o, 1, "diag(1,-{k})");
        } else {
            assert!(o == 2 || o == 4, "diag(1,-{k}): {o}");
        }
    }

    std::fs::write(&file, "hyp \"qo(1,1)\"\nhyp \"tens(u(3),qs(-1,-1))\"\n").unwrap();
    assert_eq!(wia(&["--batch", file.to_str().unwrap()]).status.code(), Some(3));
    std::fs::write(&file, "hyp \"qo(1,1)\"\nhyp \"tens(u(3),qs(-1,-1))\"\nwitt \"diag(1,\"\n").unwrap();
    let o = wia(&["--batch", file.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let last: Value = serde_json::from_str(stdout(&o).lines().last().unwrap()).unwrap();
    assert_valid("error", &last);
    // line-level flags beat the outer ones
    std::fs::write(&file, "sign --field \"Q(sqrt 2)\" \"diag(s)\"\n").unwrap();
    let o = wia(&["--batch", file.to_str().unwrap(), "--field", "Q", "--json"]);
    assert_eq!(stdout(&o), r#"{"Plus":1,"Minus":-1}"#);
    std::fs::remove_dir_all(&dir).unwrap();
}
