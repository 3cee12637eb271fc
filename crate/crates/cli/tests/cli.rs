use std::process::{Command, Output};

use serde_json::Value;

fn nabt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nabt"))
        .args(args)
        .env_remove("NABT_MAX_COSETS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = nabt(&all);
    let doc = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (out.status.code().unwrap(), doc)
}

fn without_timings(mut doc: Value) -> Value {
    doc.as_object_mut().unwrap().remove("timings");
    doc
}

#[test]
fn schur_of_klein_four() {
    let (code, doc) = json(&["schur", "corpus:V4"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["abelian_invariants"], serde_json::json!({"torsion": [2], "rank": 0}));
    assert_eq!(doc["result"]["agrees_with_bar_resolution"], true);
}

#[test]
fn tensor_square_of_c6() {
    let (code, doc) = json(&["tensor-square", "corpus:C6"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["order"], 6);
}

#[test]
fn group_spec_forms() {
    let (_, doc) = json(&["order", "corpus: Q8"]);
    assert_eq!(doc["result"]["order"], 8);
    let (_, doc) = json(&["order", "fp: <a | a^5>"]);
    assert_eq!(doc["result"]["order"], 5);
    let (_, doc) = json(&["order", "perm: (0 1), (0 1 2)"]);
    assert_eq!(doc["result"]["order"], 6);
    assert_eq!(doc["result"]["degree"], 3);
}

#[test]
fn parse_errors_exit_2_with_position() {
    let (code, doc) = json(&["order", "fp: <a, b | a^2, c>"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "parse");
    assert_eq!(doc["error"]["line"], 1);
    assert_eq!(doc["error"]["column"], 18);
}

#[test]
fn unknown_corpus_name_is_an_input_error() {
    let (code, _) = json(&["order", "corpus: NotAGroup"]);
    assert_eq!(code, 2);
}

#[test]
fn infinite_presentation_exits_3() {
    let (code, doc) = json(&["--max-cosets", "2000", "order", "fp: <a, b | a^2, b^2>"]);
    assert_eq!(code, 3);
    assert_eq!(doc["error"]["kind"], "limit_exceeded");
}

#[test]
fn max_cosets_flag_overrides_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_nabt"))
        .args(["order", "corpus:S3", "--format", "json"])
        .env("NABT_MAX_COSETS", "1234")
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["config"]["max_cosets"], 1234);
    let out = Command::new(env!("CARGO_BIN_EXE_nabt"))
        .args(["--max-cosets", "99", "order", "corpus:S3", "--format", "json"])
        .env("NABT_MAX_COSETS", "1234")
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["config"]["max_cosets"], 99);
}

#[test]
fn config_echoes_defaults() {
    let (_, doc) = json(&["abelianization", "corpus:S3"]);
    let config = &doc["config"];
    assert_eq!(config["max_cosets"], 1_000_000);
    assert_eq!(config["element_bound"], 5000);
    assert_eq!(config["bar_bound"], 16);
    assert_eq!(config["format"], "json");
    for key in ["command", "inputs", "result", "timings", "version"] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn integers_under_negation_through_module_tensor() {
    let (code, doc) = json(&["aug-tensor", "--module-rank", "1", "--action", "-1", "--over", "corpus:C2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["abelian_invariants"], serde_json::json!({"torsion": [], "rank": 1}));
}

#[test]
fn incompatible_actions_report_a_replayable_witness() {
    let s3 = "perm: (0 1), (0 1 2)";
    let (code, doc) = json(&["compatible", s3, s3, "--action-hg", "trivial"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["compatible"], false);
    assert_eq!(doc["result"]["witness_replays"], true);
    let (_, doc) = json(&["compatible", s3, s3]);
    assert_eq!(doc["result"]["compatible"], true);
}

#[test]
fn explicit_inversion_action() {
    let (code, doc) = json(&[
        "tensor",
        "corpus:C2",
        "corpus:C5",
        "--action-gh",
        "explicit: (0 4 3 2 1)",
        "--action-hg",
        "trivial",
    ]);
    assert_eq!(code, 0, "{doc}");
    assert!(doc["result"]["order"].as_u64().unwrap() >= 1);
    let (code, _) = json(&[
        "tensor",
        "corpus:C2",
        "corpus:C5",
        "--action-gh",
        "explicit: (0 1)",
        "--action-hg",
        "trivial",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn series_orders() {
    let orders = |args: &[&str]| -> Vec<u64> {
        let (_, doc) = json(args);
        doc["result"]["terms"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| t["order"].as_u64().unwrap())
            .collect()
    };
    assert_eq!(orders(&["series", "corpus:D4", "--lower-central"]), vec![8, 2, 1]);
    assert_eq!(orders(&["series", "corpus:S3", "--lower-central"]), vec![6, 3, 3]);
    assert_eq!(orders(&["series", "corpus:S3", "--derived"]), vec![6, 3, 1]);
    assert_eq!(orders(&["series", "corpus:Q8", "--derived"]), vec![8, 2, 1]);
}

#[test]
fn derivative_under_conjugation_is_the_commutator_subgroup() {
    let s3 = "corpus:S3";
    let (code, doc) = json(&["derivative", s3, s3]);
    assert_eq!(code, 0);
    let text = doc["result"].to_string();
    assert!(text.contains("\"order\":3"), "{text}");
}

#[test]
fn verify_and_corpus_json_is_deterministic() {
    let (code, a) = json(&["verify", "compatibility"]);
    assert_eq!(code, 0);
    let (_, b) = json(&["verify", "compatibility"]);
    assert_eq!(without_timings(a), without_timings(b));
}

#[test]
fn text_carries_the_json_leaves() {
    let (_, doc) = json(&["exterior-square", "corpus:Q8"]);
    let out = nabt(&["exterior-square", "corpus:Q8"]);
    let text = String::from_utf8(out.stdout).unwrap();
    fn leaves(v: &Value, out: &mut Vec<String>) {
        match v {
            Value::Object(m) => m.values().for_each(|x| leaves(x, out)),
            Value::Array(a) => a.iter().for_each(|x| leaves(x, out)),
            Value::String(s) => out.push(s.clone()),
            other => out.push(other.to_string()),
        }
    }
    let mut found = Vec::new();
    leaves(&doc["result"], &mut found);
    leaves(&doc["inputs"], &mut found);
    for leaf in found {
        assert!(text.contains(&leaf), "text output lacks {leaf}");
    }
}
