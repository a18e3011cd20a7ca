use std::process::{Command, Output};

use serde_json::Value;
use zelcalc::json::{CheckDoc, ClosureDoc, GraphDoc, MembershipDoc, ParseDoc, ReportDoc};

fn zelcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zelcalc")).args(args).env_remove("ZELCALC_WINDOW").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = zelcalc(&full);
    (code(&o), serde_json::from_slice(&o.stdout).unwrap())
}

#[test]
fn check_reports_missing_left_matching() {
    let o = zelcalc(&["check", "[0]+[1,5]", "[1]"]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(text.contains("LC: fails"));
    assert!(text.contains("reducible"));
    let (c, v) = json(&["check", "[0]+[1,5]", "[1]"]);
    assert_eq!(c, 1);
    let doc: CheckDoc = serde_json::from_value(v).unwrap();
    assert!(!doc.lc.holds && doc.rc.holds && !doc.irreducible);
    assert_eq!(doc.schema_version, 1);
}

#[test]
fn check_irreducible_exits_zero() {
    assert_eq!(code(&zelcalc(&["check", "[0]+[1,5]", "[0,1]"])), 1);
    assert_eq!(code(&zelcalc(&["check", "[0]+[1,5]", "[8,9]"])), 0);
}

#[test]
fn poset_json_shape() {
    let (c, v) = json(&["poset", "[0,1]+[1,2]"]);
    assert_eq!(c, 0);
    let doc: GraphDoc = serde_json::from_value(v).unwrap();
    assert_eq!((doc.nodes.len(), doc.edges.len()), (2, 1));
    assert_eq!(doc.edges[0].pair, ["[0,1]".to_string(), "[1,2]".to_string()]);
    let dot = stdout(&zelcalc(&["poset", "[0,1]+[1,2]", "--dot"]));
    assert!(dot.starts_with("digraph") && dot.contains("n0 -> n1"));
}

#[test]
fn parse_errors_exit_two_with_position() {
    let o = zelcalc(&["parse", "[2,0]"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 0"));
    let (c, v) = json(&["parse", "[0]+[1"]);
    assert_eq!(c, 2);
    assert_eq!(v["position"], 6);
    assert_eq!(code(&zelcalc(&["check", "[0]", "[1,"])), 2);
}

#[test]
fn parse_prints_canonical_form() {
    let o = zelcalc(&["parse", " [1,5] + [0,0]_1 "]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "[0]+[1,5]");
    let (_, v) = json(&["--line", "rho dim=2", "parse", "[3]_rho+[0]"]);
    let doc: ParseDoc = serde_json::from_value(v).unwrap();
    assert_eq!(doc.canonical, "[0]+[3]_rho");
    assert_eq!(doc.entries.len(), 2);
    let o = zelcalc(&["parse", "@line tau dim=3\n[1,2]_tau"]);
    assert_eq!(stdout(&o).trim(), "[1,2]_tau");
}

#[test]
fn mpi_and_closure() {
    let (c, v) = json(&["mpi", "[0,1]", "[-1,1]+[0,2]"]);
    assert_eq!(c, 0);
    let doc: MembershipDoc = serde_json::from_value(v).unwrap();
    assert!(doc.overall);
    assert_eq!(code(&zelcalc(&["mpi", "[0]+[1,5]", "[1]"])), 1);
    let (c, v) = json(&["closure", "[0,1]", "[-1,1]+[0,2]"]);
    assert_eq!(c, 0);
    let doc: ClosureDoc = serde_json::from_value(v).unwrap();
    assert!(doc.holds && doc.checked_nodes == 2);
    // n outside M is a usage error, not a negative verdict
    assert_eq!(code(&zelcalc(&["closure", "[0]+[1,5]", "[0,1]+[1,5]"])), 2);
}

#[test]
fn text_and_json_verdicts_agree() {
    for (m, d) in [("[0]+[1,5]", "[1]"), ("[0]+[1,5]", "[0,1]"), ("[0,2]+[1,3]", "[2,4]"), ("0", "[0]")] {
        let text = zelcalc(&["check", m, d]);
        let (c, v) = json(&["check", m, d]);
        assert_eq!(code(&text), c);
        let irreducible = stdout(&text).contains("is irreducible");
        assert_eq!(v["irreducible"].as_bool().unwrap(), irreducible);
    }
}

#[test]
fn budget_exceeded_exits_three() {
    assert_eq!(code(&zelcalc(&["--budget", "3", "poset", "[0]+[1]+[2]+[3]+[4]"])), 3);
    assert_eq!(code(&zelcalc(&["--budget", "10", "enumerate"])), 3);
}

#[test]
fn window_flag_beats_environment() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_zelcalc"));
        cmd.env_remove("ZELCALC_WINDOW");
        if let Some(e) = env {
            cmd.env("ZELCALC_WINDOW", e);
        }
        if let Some(f) = flag {
            cmd.args(["--window", f]);
        }
        let o = cmd.args(["--json", "enumerate", "--count"]).output().unwrap();
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v["count"].as_u64().unwrap()
    };
    assert_eq!(run(None, None), 816);
    assert_eq!(run(Some("0..1,segs=2,len=2"), None), 10);
    assert_eq!(run(Some("0..1,segs=2,len=2"), Some("0..2,segs=1")), 7);
    let bad = Command::new(env!("CARGO_BIN_EXE_zelcalc")).args(["--window", "3..1", "enumerate"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn derive_commands() {
    let o = zelcalc(&["derive", "same-end", "[0,2]+[1,2]+[2]", "[1,2]"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("[0,2]+[1,2]+[2] - [1,2] = [0,2]+[2]"));
    assert_eq!(code(&zelcalc(&["derive", "same-end", "[0,2]+[1,3]", "[0,2]"])), 2);
    let (_, v) = json(&["derive", "nested", "[0,1]+[0,1]+[0,1]", "--peel", "[0,1]+[0,1]"]);
    assert_eq!(v["output"], "[0,1]");
    assert_eq!(v["rule"], "NestedZelevinsky");
    let (_, v) = json(&["derive", "jacquet", "steinberg", "[0,3]", "1"]);
    assert_eq!(v["parts"], serde_json::json!(["[1,3]", "[0]"]));
    let (c, v) = json(&["derive", "compose", "[0,1]+[0,1]+[0,1]", "[0,1]", "[0,1]"]);
    assert_eq!((c, v["holds"].as_bool()), (0, Some(true)));
    assert_eq!(code(&zelcalc(&["derive", "vanishing", "[0,2]", "[3,4]"])), 1);
    assert_eq!(stdout(&zelcalc(&["derive", "mxpt", "[0,2]+[1,2]", "--end", "2"])).trim(), "[0,2]+[1,2]");
}

#[test]
fn mx_modes() {
    let sat = stdout(&zelcalc(&["mx", "[0,1]+[3,4]", "[2,4]"]));
    assert!(sat.starts_with("mx (saturated) = [3,4]"));
    let lit = stdout(&zelcalc(&["mx", "[0,1]+[3,4]", "[2,4]", "--unfiltered"]));
    assert!(lit.starts_with("mx (literal) = [0,4]+[3,4]"));
    assert_eq!(stdout(&zelcalc(&["mx", "[0,1]+[3,4]", "[2,4]", "--mode", "literal"])), lit);
    assert_eq!(code(&zelcalc(&["mx", "[0,1]+[1,2]", "[0,2]"])), 2);
}

#[test]
fn selftest_exit_codes() {
    let window = "0..2,segs=2";
    let (c, v) = json(&["--window", window, "selftest", "closure"]);
    assert_eq!(c, 0);
    let doc: ReportDoc = serde_json::from_value(v).unwrap();
    assert_eq!(doc.report.violations.len(), 0);
    let o = zelcalc(&["--window", "0..4", "selftest", "hall", "--corrupt"]);
    assert_eq!(code(&o), 1);
    assert_eq!(code(&zelcalc(&["selftest", "nope"])), 2);
    let (c, v) = json(&["--window", window, "selftest", "all"]);
    assert_eq!(c, 0);
    assert_eq!(v.as_array().unwrap().len(), 10);
}

#[test]
fn unknown_subcommand_is_usage_error() {
    assert_eq!(code(&zelcalc(&["frobnicate"])), 2);
    assert_eq!(code(&zelcalc(&["check", "[0]"])), 2);
}
