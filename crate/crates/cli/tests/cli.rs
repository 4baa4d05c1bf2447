use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn unitcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unitcode")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn error_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stderr)))
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gsb_prints_the_bound() {
    let o = unitcode(&["gsb", "5", "2", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "9");
    let j = json_out(&unitcode(&["--json", "gsb", "7", "3", "3"]));
    assert_eq!(j["gsb"], 12);
}

#[test]
fn germain_design_round_trips_through_certify() {
    let dir = tempfile::tempdir().unwrap();
    let card = dir.path().join("code.json");
    let o = unitcode(&["--json", "design", "--fourier", "5", "--germain", "--rate", "2", "--memory", "1", "-o", path(&card)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let j = json_out(&o);
    assert_eq!(j["params"], serde_json::json!([5, 2, 2, 1]));
    assert_eq!(j["distance"]["lower"], 8);
    assert_eq!(j["distance"]["exact"], true);

    let o = unitcode(&["--json", "certify", path(&card)]);
    assert!(o.status.success());
    assert_eq!(json_out(&o)["verified"], true);

    let g = stdout(&unitcode(&["export", path(&card), "--what", "generator"]));
    assert!(g.contains("# z^0") && g.contains("# z^1"));
}

#[test]
fn tampered_card_fails_certification() {
    let dir = tempfile::tempdir().unwrap();
    let card = dir.path().join("code.json");
    assert!(unitcode(&["design", "--fourier", "5", "--germain", "--rate", "2", "--memory", "1", "--no-distance", "-o", path(&card)])
        .status
        .success());
    let mut j: Value = serde_json::from_str(&std::fs::read_to_string(&card).unwrap()).unwrap();
    let entry = &mut j["generator"]["blocks"][0][0][0];
    *entry = Value::from((entry.as_u64().unwrap() + 1) % 11);
    std::fs::write(&card, j.to_string()).unwrap();
    let o = unitcode(&["certify", path(&card)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_of(&o)["code"], "verification-failed");
}

#[test]
fn length_113_reaches_the_singleton_bound() {
    let o = unitcode(&["--json", "design", "--fourier", "113", "--scheme", "0/1", "-o", "/dev/null"]);
    assert!(o.status.success());
    let j = json_out(&o);
    assert_eq!(j["params"], serde_json::json!([113, 1, 1, 1]));
    assert_eq!(j["distance"]["lower"], 226);
}

#[test]
fn eleven_point_design_is_bracketed_at_fourteen() {
    let o = unitcode(&["--json", "design", "--fourier", "11", "--field", "23", "--scheme", "0,1,2,3,4/5,6,7,8,9", "-o", "/dev/null"]);
    assert!(o.status.success());
    let d = &json_out(&o)["distance"];
    assert_eq!(d["lower"], 14);
    assert_eq!(d["upper"], 14);
}

#[test]
fn chebotarev_failure_exits_one() {
    let o = unitcode(&["--json", "chebotarev", "--fourier", "11", "--field", "23"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json_out(&o)["report"]["holds"], false);
    assert!(unitcode(&["chebotarev", "--fourier", "5", "--field", "2,4"]).status.success());
}

#[test]
fn ldpc_build_reports_the_tanner_graph() {
    let dir = tempfile::tempdir().unwrap();
    let card = dir.path().join("ldpc.json");
    let o = unitcode(&["--json", "ldpc-build", "-o", path(&card)]);
    assert!(o.status.success());
    let j = json_out(&o);
    assert_eq!(j["element_support"], 9);
    assert_eq!(j["tanner"]["has_4cycle"], false);
    assert_eq!(j["block_grid_identity"], true);
    assert_eq!(j["summary"]["params"], serde_json::json!([816, 204, 612, 3]));
    assert!(card.exists());
}

#[test]
fn self_dual_and_dual_containing_cards_certify() {
    let dir = tempfile::tempdir().unwrap();
    let sd = dir.path().join("d8.json");
    let o = unitcode(&["--json", "selfdual", "--group", "D8", "--support", "0:0,0:1,1:1", "-o", path(&sd)]);
    assert!(o.status.success());
    let j = json_out(&o);
    assert_eq!(j["duality"], "self-dual");
    assert_eq!(j["distance"]["lower"], 6);
    assert!(unitcode(&["certify", path(&sd)]).status.success());

    let o = unitcode(&["--json", "selfdual", "--group", "C8", "--support", "0,2,6", "--blocks", "4", "--all-perms"]);
    assert_eq!(json_out(&o)["certified"], 24);

    let dc = dir.path().join("c16.json");
    let o = unitcode(&["--json", "dualcontain", "--group", "C16", "--support", "1,7,8,9,15", "--blocks", "8", "-o", path(&dc)]);
    assert!(o.status.success());
    assert_eq!(json_out(&o)["duality"], "dual-containing");
    assert!(unitcode(&["certify", path(&dc)]).status.success());
}

#[test]
fn repro_filters_by_group() {
    let o = unitcode(&["--json", "repro", "--only", "gsb"]);
    assert!(o.status.success());
    let j = json_out(&o);
    assert_eq!(j["pass"], true);
    let rows = j["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["group"] == "gsb"));
}

#[test]
fn errors_are_json_with_exit_codes() {
    let o = unitcode(&["gsb", "2", "5", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_of(&o)["code"], "invalid-input");

    let o = unitcode(&["no-such-command"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_of(&o)["code"], "invalid-input");

    let o = unitcode(&["design", "--fourier", "5", "--field", "4", "--rate", "2", "--memory", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_of(&o)["code"], "invalid-input");

    let o = unitcode(&["certify", "/nonexistent/card.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn guard_exceeded_exits_two() {
    let o = unitcode(&["chebotarev", "--fourier", "13", "--field", "53", "--guard", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_of(&o)["code"], "guard-exceeded");
}

#[test]
fn unknown_repro_group_is_rejected() {
    let o = unitcode(&["repro", "--only", "nonsense"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_of(&o)["code"], "invalid-input");
}

#[test]
fn germain_length_113_design_has_lower_bound_116() {
    let o = unitcode(&["--json", "design", "--fourier", "113", "--germain", "--rate", "56", "--memory", "1", "-o", "/dev/null"]);
    assert!(o.status.success());
    let j = json_out(&o);
    assert_eq!(j["params"], serde_json::json!([113, 56, 56, 1]));
    assert_eq!(j["field"], "227");
    assert_eq!(j["distance"]["lower"], 116);
    assert_eq!(j["distance"]["assumed"], false);
}

#[test]
fn grouping_file_design_builds_the_ldpc_code() {
    let dir = tempfile::tempdir().unwrap();
    let ldpc = dir.path().join("ldpc.json");
    assert!(unitcode(&["ldpc-build", "-o", path(&ldpc)]).status.success());
    let element = unitcode(&["export", path(&ldpc), "--what", "element"]);
    assert!(element.status.success());
    let gr = dir.path().join("v.gr");
    std::fs::write(&gr, &element.stdout).unwrap();
    assert!(stdout(&element).starts_with("group=C204xC4 field=2"));

    let card = dir.path().join("design.json");
    let o = unitcode(&["--json", "design", "--grouping-file", path(&gr), "--blocks", "4", "--scheme", "0,1,2,3", "-o", path(&card)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let j = json_out(&o);
    assert_eq!(j["params"], serde_json::json!([816, 204, 612, 3]));
    assert_eq!(j["ldpc"]["has_4cycle"], false);
    assert!(unitcode(&["certify", path(&card)]).status.success());
}
