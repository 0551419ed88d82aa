use std::process::{Command, Output};

use selmer_core::ReportJson;

fn selmer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selmer")).args(args).env_remove("SELMER_DB").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn report_17a1_over_cube_root_of_34() {
    let o = selmer(&["report", "--curve", "17a1", "--p", "3", "--m", "34"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("verdict: nontrivial"), "{text}");
    assert!(text.contains("SplitMultTameSymbol"));
    assert!(text.contains("not asserted"));
}

#[test]
fn json_report_round_trips() {
    let o = selmer(&["report", "--curve", "17a1", "--p", "3", "--m", "34", "--format", "json", "--assume-selmer-trivial"]);
    assert_eq!(o.status.code(), Some(0));
    let model: ReportJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((model.p, model.m), (3, 34));
    assert_eq!(serde_json::to_value(&model).unwrap(), serde_json::from_str::<serde_json::Value>(&stdout(&o)).unwrap());
}

#[test]
fn a_invariants_match_the_database() {
    let by_label = selmer(&["report", "--curve", "14a1", "--p", "5", "--m", "10", "--format", "csv"]);
    let by_coeffs = selmer(&["report", "--a-invariants", "1,0,1,4,-6", "--p", "5", "--m", "10", "--format", "csv"]);
    assert_eq!(by_label.status.code(), Some(0));
    assert_eq!(stdout(&by_label), stdout(&by_coeffs));
}

#[test]
fn exit_codes() {
    assert_eq!(selmer(&["report", "--curve", "17a1", "--p", "3", "--m", "27"]).status.code(), Some(64));
    assert_eq!(selmer(&["report", "--curve", "17a1", "--p", "17", "--m", "2"]).status.code(), Some(2));
    assert_eq!(selmer(&["report", "--curve", "20a1", "--p", "3", "--m", "2"]).status.code(), Some(2));
    assert_eq!(selmer(&["report", "--curve", "nope", "--p", "3", "--m", "2"]).status.code(), Some(64));
    assert_eq!(selmer(&["report", "--a-invariants", "0,0,0,0,0", "--p", "3", "--m", "2"]).status.code(), Some(65));
    assert_eq!(selmer(&["scan", "--curve", "17a1", "--p", "3", "--m-range", "2:200000"]).status.code(), Some(64));
    assert_eq!(selmer(&["verify", "--curve", "17a1", "--p", "7"]).status.code(), Some(64));
    assert_eq!(selmer(&["frobnicate"]).status.code(), Some(64));
}

#[test]
fn empty_scan_succeeds() {
    let o = selmer(&["scan", "--curve", "17a1", "--p", "3", "--m-range", "2:1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
}

#[test]
fn scan_filter_and_csv() {
    let o = selmer(&["scan", "--curve", "17a1", "--p", "3", "--m-range", "2:40", "--filter", "trivial", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,lo,hi,verdict"));
    let ms: Vec<u64> = lines.map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert!(!ms.is_empty());
    for m in ms {
        let r = selmer(&["report", "--curve", "17a1", "--p", "3", "--m", &m.to_string(), "--format", "json"]);
        let model: ReportJson = serde_json::from_str(&stdout(&r)).unwrap();
        assert_eq!(model.verdict.to_string(), "trivial", "m = {m}");
    }
}

#[test]
fn custom_database_from_environment() {
    let dir = std::env::temp_dir().join(format!("selmer-db-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("curves.csv");
    std::fs::write(&path, "label,a1,a2,a3,a4,a6\nmine,0,0,1,-1,0\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_selmer"))
        .args(["report", "--curve", "mine", "--p", "3", "--m", "2"])
        .env("SELMER_DB", &path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::write(&path, "label,a1,a2,a3,a4,a6\nmine,0,0,x,-1,0\n").unwrap();
    let bad = Command::new(env!("CARGO_BIN_EXE_selmer"))
        .args(["report", "--curve", "mine", "--p", "3", "--m", "2"])
        .env("SELMER_DB", &path)
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(65));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_tame_tower_passes() {
    let o = selmer(&["verify", "--curve", "17a1", "--p", "3", "--m", "2"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("PASS  norm cokernel: dim 0"), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_wild_tower_reports_computed_values() {
    let o = selmer(&["verify", "--curve", "17a1", "--p", "3"]);
    let text = stdout(&o);
    for line in ["PASS  group law", "PASS  height", "PASS  norm series", "PASS  ramification: t = 3", "PASS  trace ideals"] {
        assert!(text.contains(line), "{line} missing from\n{text}");
    }
    let cokernel = text.lines().find(|l| l.contains("norm cokernel")).unwrap();
    assert!(cokernel.contains("dim 2"), "{cokernel}");
    assert_eq!(o.status.code(), Some(if cokernel.starts_with("FAIL") { 1 } else { 0 }));
}

#[test]
fn trace_lemma_needs_no_curve() {
    let o = selmer(&["verify", "--p", "5", "--m", "5", "--trace-lemma"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn verify_ordinary_curve_is_informational() {
    // 11a1 is ordinary at 3 (a_3 = -1)
    let o = selmer(&["verify", "--curve", "11a1", "--p", "3"]);
    let text = stdout(&o);
    assert!(text.contains("PASS  height: Finite(1)"), "{text}");
    assert!(text.contains("INFO  norm cokernel"), "{text}");
    assert_eq!(o.status.code(), Some(0));
}
