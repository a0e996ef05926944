use std::process::Command;

use splitloci_cli::run;

fn call(args: &[&str]) -> (u8, String, String) {
    let mut argv = vec!["splitloci".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> serde_json::Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn wrd_table_genus_six() {
    let (code, out, _) = call(&["bn-wrd", "--g", "6", "--k", "3", "--d", "4", "--r", "1", "--format", "table"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().skip(2).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].contains("(-4,0,0)") && rows[0].split_whitespace().nth(3) == Some("0"));
    assert!(rows[1].contains("(-3,-2,1)") && rows[1].split_whitespace().nth(3) == Some("1"));
}

#[test]
fn wrd_json_and_verify() {
    let v = json(&["bn-wrd", "--g", "6", "--k", "3", "--d", "4", "--r", "1", "--format", "json", "--verify"]);
    assert_eq!(v["schema"], "splitloci/1");
    assert_eq!(v["strata"][0]["type"], serde_json::json!([-4, 0, 0]));
    assert_eq!(v["bruteforce"]["agrees"], true);
}

#[test]
fn wrd_whole_picard() {
    let (code, out, _) = call(&["bn-wrd", "--g", "3", "--k", "3", "--d", "5", "--r", "1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("W^1_5 is all of Pic^5"));
}

#[test]
fn poset_dot_genus_five() {
    let (code, out, _) = call(&["strata-poset", "--g", "5", "--k", "3", "--d", "4", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph strata_g5_k3_d4 {"));
    assert_eq!(out.lines().filter(|l| l.contains("[label=")).count(), 5);
    assert_eq!(out.lines().filter(|l| l.contains("->")).count(), 5);
}

#[test]
fn poset_json_shape() {
    let v = json(&["strata-poset", "--g", "5", "--k", "3", "--d", "4", "--format", "json"]);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 5);
    assert_eq!(v["covers"].as_array().unwrap().len(), 5);
    assert_eq!(v["nodes"][0]["type"], serde_json::json!([-3, -1, 1]));
}

#[test]
fn include_empty_and_node_cap() {
    let base = json(&["strata-enumerate", "--g", "5", "--k", "3", "--d", "4", "--format", "json"]);
    let more = json(&["strata-enumerate", "--g", "5", "--k", "3", "--d", "4", "--format", "json", "--include-empty", "3"]);
    assert!(more["nodes"].as_array().unwrap().len() > base["nodes"].as_array().unwrap().len());
    let (code, _, err) = call(&["strata-poset", "--g", "5", "--k", "3", "--d", "4", "--node-cap", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("too large"));
}

#[test]
fn rhok() {
    let v = json(&["bn-rhok", "--g", "6", "--k", "3", "--d", "4", "--r", "1", "--format", "json"]);
    assert_eq!(v["rho"], 0);
    assert_eq!(v["rho_k"], 1);
}

#[test]
fn classes_extreme_and_dual() {
    let v = json(&["classes", "--k", "3", "--degree", "-4", "--n", "4", "--g", "6", "--format", "json"]);
    assert_eq!(v["type"], serde_json::json!([-4, 0, 0]));
    assert_eq!(v["a"], serde_json::json!([1, 720]));
    assert_eq!(v["points"], 1);
    let (code, out, _) = call(&["classes", "--dual-of", "(-2,-2,1)", "--g", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("1/24"));
    let (code, _, _) = call(&["classes", "--dual-of", "(-3,-1,1)", "--g", "5"]);
    assert_eq!(code, 1);
}

#[test]
fn degen_verify_and_alias() {
    let (code, out, _) = call(&["degen-verify", "--kmax", "4"]);
    assert_eq!(code, 0);
    assert!(!out.contains("FAIL"));
    let (code2, out2, _) = call(&["degen", "verify", "--kmax", "4"]);
    assert_eq!((code2, out2), (code, out));
}

#[test]
fn fixtures_all_pass() {
    let (code, out, _) = call(&["fixtures"]);
    assert_eq!(code, 0);
    assert!(out.lines().filter(|l| !l.contains(" fixtures pass")).all(|l| l.starts_with("PASS")));
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["bn-wrd", "--g", "6", "--k", "3", "--d", "4", "--r", "1", "--format", "dot"]).0, 2);
    assert_eq!(call(&["nonsense"]).0, 2);
    assert_eq!(call(&["bn-rhok", "--g", "6", "--k", "1", "--d", "4", "--r", "1"]).0, 2);
    assert_eq!(call(&["bn-rhok", "--g", "2000000", "--k", "3", "--d", "4", "--r", "1"]).0, 2);
    assert_eq!(call(&["classes", "--k", "3", "--degree", "-3", "--n", "0", "--g", "5"]).0, 1);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn output_is_deterministic() {
    let args = ["strata-poset", "--g", "9", "--k", "4", "--d", "7", "--format", "json"];
    assert_eq!(call(&args), call(&args));
}

#[test]
fn out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("poset.dot");
    let p = path.to_str().unwrap();
    let (code, out, _) = call(&["strata-poset", "--g", "5", "--k", "3", "--d", "4", "--format", "dot", "--out", p]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("digraph"));
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_splitloci");
    let ok = Command::new(bin).args(["bn-rhok", "--g", "6", "--k", "3", "--d", "4", "--r", "1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let usage = Command::new(bin).args(["bn-wrd", "--format", "dot"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let env_cap = Command::new(bin)
        .args(["strata-poset", "--g", "5", "--k", "3", "--d", "4"])
        .env("SPLITLOCI_NODE_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(env_cap.status.code(), Some(1));
}
