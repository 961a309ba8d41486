use std::process::{Command as Proc, Output};

use serde_json::Value;

fn extclosed(args: &[&str]) -> Output {
    Proc::new(env!("CARGO_BIN_EXE_extclosed"))
        .args(args)
        .env_remove("EXTCLOSED_ELEMENT_BOUND")
        .env_remove("EXTCLOSED_SUBGROUP_BOUND")
        .output()
        .expect("binary runs")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each stdout line is JSON"))
        .collect()
}

#[test]
fn s4_three_cycle_is_extremely_closed() {
    let out = extclosed(&[
        "check",
        "--group",
        "catalog:S4",
        "--subgroup",
        "gens:(1,2,3)",
        "--property",
        "extremely-closed",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(v["holds"], Value::Bool(true));
    assert_eq!(v["predicate"], "extremely-closed");
    assert_eq!(v["subgroup_order"], 3);
    assert_eq!(v["overgroup_order"], 6);
}

#[test]
fn u3_4_center_of_sylow_fails_with_witness() {
    let out = extclosed(&[
        "check",
        "--group",
        "catalog:U3_4",
        "--subgroup",
        "center-of-sylow:2",
        "--property",
        "extremely-closed",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = &json_lines(&out)[0];
    assert_eq!(v["holds"], Value::Bool(false));
    assert_eq!(v["subgroup_order"], 4);
    assert!(v["witness_element"].is_string());
    assert!(v["witness_element_order"].as_u64().unwrap() > 1);
    assert!(v["witness_subgroup"]["order"].as_u64().unwrap() > 1);
}

#[test]
fn repro_passes_every_block() {
    let out = extclosed(&["repro", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let lines = json_lines(&out);
    let labels: Vec<&str> = lines.iter().map(|v| v["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["example1", "example2", "example3", "l2_17", "u3_3", "a5_caveat"]);
    for v in &lines {
        for key in [
            "statement_id",
            "group",
            "instances",
            "holds",
            "vacuous",
            "counterexample",
            "checks",
            "notes",
            "millis",
        ] {
            assert!(v.get(key).is_some(), "missing {key} in {v}");
        }
        assert_eq!(v["statement_id"], "examples");
        assert!(v["counterexample"].is_null());
    }
}

#[test]
fn malformed_input_exits_2_and_names_the_token() {
    let out = extclosed(&["check", "--group", "catalog:S4", "--subgroup", "gens:(1,2,9)", "--property", "pronormal"]);
    assert_eq!(out.status.code(), Some(2));
    let out = extclosed(&["info", "--group", "catalog:NOPE"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NOPE"));
    let out = extclosed(&["check", "--group", "catalog:S4", "--subgroup", "sylow:2", "--property", "sideways"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sideways"));
    let out = extclosed(&["verify", "--group", "catalog:S4", "--statement", "th99"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("th99"));
    let out = extclosed(&["check", "--group", "catalog:S4", "--subgroup", "sylow:4", "--property", "pronormal"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tiny_bound_exits_3() {
    let out = extclosed(&[
        "check",
        "--group",
        "catalog:A6",
        "--subgroup",
        "sylow:2",
        "--property",
        "pronormal",
        "--element-bound",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = Proc::new(env!("CARGO_BIN_EXE_extclosed"))
        .args(["sweep", "--corpus", "subgroups-of:S5", "--statements", "th1", "--primes", "2"])
        .env("EXTCLOSED_SUBGROUP_BOUND", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_and_sweep_emit_reports() {
    let out = extclosed(&["verify", "--group", "catalog:S5", "--statement", "th2", "--prime", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(v["statement_id"], "th2");
    assert_eq!(v["prime"], 3);

    let out = extclosed(&["sweep", "--corpus", "subgroups-of:S4", "--statements", "th3", "--primes", "2,3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&out);
    assert!(!lines.is_empty());
    assert!(lines.iter().all(|v| v["statement_id"] == "th3" && v["holds"] == Value::Bool(true)));
}

#[test]
fn info_reports_order_and_classes() {
    let out = extclosed(&["info", "--group", "gens:(1,2,3,4);(1,2)", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(v["order"], 24);
    assert_eq!(v["classes"], 5);
    assert_eq!(v["solvable"], Value::Bool(true));
}

#[test]
fn text_mode_witness_is_printed() {
    let out = extclosed(&["check", "--group", "catalog:S4", "--subgroup", "gens:(1,2)", "--property", "isolated", "--element", "(1,2)"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("isolated"), "{text}");
    assert!(matches!(out.status.code(), Some(0) | Some(1)));
}
