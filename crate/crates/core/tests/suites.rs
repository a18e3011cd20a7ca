use zelcalc::oracle::{run_suite, RunOptions, SuiteId, Window};

/// Small enough to run every suite in well under a second.
fn small() -> Window {
    Window { lines: 2, lo: 0, hi: 3, max_segments: 2, max_len: 4, max_total_abs: None }
}

#[test]
fn every_suite_is_clean_on_a_small_two_line_window() {
    for id in SuiteId::ALL {
        let r = run_suite(id, &small(), RunOptions::default()).unwrap();
        assert!(r.checked > 0, "{id} checked nothing");
        assert!(r.passed(), "{id}: {:?}", r.violations);
    }
}

#[test]
fn corruption_is_detected() {
    let opts = RunOptions { corrupt: true, ..RunOptions::default() };
    let w = Window::default();
    for id in [SuiteId::Hall, SuiteId::Closure] {
        let r = run_suite(id, &w, opts).unwrap();
        assert!(!r.passed(), "{id} missed the corrupted matcher");
        let v = &r.violations[0];
        assert!(v.input.len() <= v.original.len());
    }
}

#[test]
fn divergence_is_reported_not_failed() {
    let r = run_suite(SuiteId::MxDivergence, &Window::default(), RunOptions::default()).unwrap();
    assert!(r.passed());
    let summary = r.findings.iter().find(|f| f.starts_with("divergent instances:")).unwrap();
    let count: u64 = summary.split_whitespace().nth(2).unwrap().parse().unwrap();
    assert!(count > 0 && count < r.checked);
    // the two-segment instance where the readings first part ways
    let w = Window { hi: 4, max_segments: 2, ..Window::default() };
    let r = run_suite(SuiteId::MxDivergence, &w, RunOptions::default()).unwrap();
    assert!(r.findings.iter().any(|f| f.starts_with("n=[0,1]+[3,4]; D=[2,4]: saturated [3,4] vs literal [0,4]+[3,4]")));
}

#[test]
fn report_json_has_the_documented_keys() {
    let r = run_suite(SuiteId::Parser, &small(), RunOptions::default()).unwrap();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    for key in ["suite", "window", "checked", "violations", "wall_time_ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["suite"], "parser");
}

#[test]
fn unknown_suite_is_an_error() {
    assert!("closures".parse::<SuiteId>().is_err());
}
