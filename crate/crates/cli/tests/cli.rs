use std::process::Command;

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_stern");

fn stern(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json_lines(s: &str) -> Vec<Value> {
    s.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn poly_output() {
    let (code, out, _) = stern(&["poly", "11"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"n\":11,\"coeffs\":[1,3,1],\"degree\":2}\n");
    let (_, out, _) = stern(&["poly", "0"]);
    assert_eq!(out, "{\"n\":0,\"coeffs\":[],\"degree\":null}\n");
}

#[test]
fn huge_index() {
    let n = "1606938044258990275541962092341162602522202993782792835301297"; // 2^200 - 79
    let (code, out, _) = stern(&["degree", n]);
    assert_eq!(code, 0);
    assert_eq!(json_lines(&out)[0]["degree"], 200 - 2 - 1);
    let (_, out, _) = stern(&["reciprocal", "check", n]);
    assert_eq!(json_lines(&out)[0]["reciprocal"], true);
}

#[test]
fn evaluation() {
    let (code, out, _) = stern(&["eval", "95", "-1/2"]);
    assert_eq!(code, 0);
    assert_eq!(json_lines(&out)[0]["value"], serde_json::json!({"num": "-5", "den": "32"}));
    let (_, out, _) = stern(&["eval", "6", "3", "--modulus", "7"]);
    assert_eq!(json_lines(&out)[0]["value"], 5);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(stern(&["degree", "0"]).0, 2);
    assert_eq!(stern(&["poly"]).0, 2);
    assert_eq!(stern(&["eval", "5", "-1/2", "--modulus", "9"]).0, 2);
    assert_eq!(stern(&["automaton", "--p", "3", "--target", "-1/2"]).0, 2);
    assert_eq!(stern(&["automaton", "--p", "7", "--target", "-1/2", "--analyze", "--cesaro", "10"]).0, 2);
    assert_eq!(stern(&["verify", "ineq1", "--k", "3"]).0, 2);
    assert_eq!(stern(&["poly", "5", "--format", "dot"]).0, 2);
}

#[test]
fn violations_exit_1() {
    // t = -1/3 = 2 mod 7 and B_n(2) = n, so the output is n mod 7.
    let (code, out, _) = stern(&["automaton", "--p", "7", "--target", "-1/3", "--period-search"]);
    assert_eq!(code, 1);
    let r = &json_lines(&out)[0];
    assert_eq!(r["outcome"], "fail");
    assert_eq!(r["witness"]["period"], 7);
}

#[test]
fn degrees_pair_at_full_scale() {
    let (code, out, _) = stern(&["verify", "degrees-pair", "--max", "1048576"]);
    assert_eq!(code, 0);
    assert_eq!(json_lines(&out)[0]["outcome"], "pass");
}

#[test]
fn dot_export() {
    let (code, out, _) = stern(&["automaton", "--p", "7", "--target", "-1/2", "--emit", "dot"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph automaton {"));
    assert!(out.contains("K = 48"));
    assert_eq!(out.matches("shape=doublecircle").count(), 6);
    assert_eq!(out.matches("[label=\"0\"]").count(), 48);
    let (_, again, _) = stern(&["automaton", "--p", "7", "--target", "-1/2", "--format", "dot"]);
    assert_eq!(out, again);
}

#[test]
fn csv_tables() {
    let (code, out, _) = stern(&["roots", "density", "--set", "-1/2", "--imax", "4", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("set,i,count,density"));
    assert_eq!(lines.next(), Some("-1/2,0,1,1/1"));
    let (_, out, _) = stern(&["reciprocal", "census", "--max", "1024", "--format", "csv"]);
    assert!(out.starts_with("k,bound,total,threshold_sum,threshold_sum_u\n1,2,1,"));
}

#[test]
fn members_and_out_file() {
    let dir = std::env::temp_dir().join(format!("stern-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("members.jsonl");
    let (code, out, _) =
        stern(&["roots", "members", "--set", "-1/2", "--max", "40", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    let members: Vec<u64> = json_lines(&written).iter().map(|v| v["n"].as_u64().unwrap()).collect();
    assert_eq!(members, [0, 5, 10, 20, 35, 40]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_independent_of_jobs() {
    let (_, one, _) = stern(&["verify", "all", "--profile", "quick", "--jobs", "1"]);
    let (_, four, _) = stern(&["verify", "all", "--profile", "quick", "--jobs", "4"]);
    assert!(!one.is_empty());
    assert_eq!(one, four);
}

#[test]
fn alias_and_roots_routes() {
    let (code, a, _) = stern(&["verify", "theorem6", "--m-max", "1", "--k-max", "30"]);
    let (_, b, _) = stern(&["verify", "reciprocal-families", "--m-max", "1", "--k-max", "30"]);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    let (_, a, _) = stern(&["roots", "scan", "--max", "2000"]);
    let (_, b, _) = stern(&["verify", "roots", "scan", "--max", "2000"]);
    assert_eq!(a, b);
    assert_eq!(json_lines(&a)[0]["statistics"]["first(-1/3)"], 21);
}
