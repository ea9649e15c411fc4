use std::fs;
use std::path::PathBuf;

use relconv::cli::run;
use relconv::quantcalc::{duration_conv_min, PcSignal, RInterval};
use relconv::LawReport;

fn relconv(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("relconv").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("relconv-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

#[test]
fn fusion_fixture_lifts_to_a_unital_quantale() {
    let (code, out, _) = relconv(&["check-laws", "--rel", "fusion-chain4.json", "--quantale", "bool", "--mode", "unital"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("ALL PASS"));
}

#[test]
fn the_non_associative_relation_fails_at_b() {
    let (code, out, _) = relconv(&["check-laws", "--rel", "paper-assoc-counter.json", "--mode", "quantale"]);
    assert_eq!(code, 1);
    let line = out.lines().find(|l| l.contains("lifting associativity")).unwrap();
    assert!(line.contains("at b, (f∗g)∗h = 0 but f∗(g∗h) = 1"), "{line}");
}

#[test]
fn weak_chain_fails_full_mode() {
    let (code, out, _) = relconv(&["check-laws", "--quantale", "chain3-weak", "--mode", "full"]);
    assert_eq!(code, 1);
    assert!(out.contains("right-annihilation"));
    let (code, _, _) = relconv(&["check-laws", "--quantale", "chain3-weak"]);
    assert_eq!(code, 0);
}

#[test]
fn json_reports_round_trip() {
    let (code, out, _) = relconv(&["--json", "check-laws", "--rel", "paper-assoc-counter.json"]);
    assert_eq!(code, 1);
    let report: LawReport = serde_json::from_str(&out).unwrap();
    assert!(!report.passed());
    assert_eq!(serde_json::to_string_pretty(&report).unwrap().trim(), out.trim());
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(relconv(&["check-laws", "--rel", "no-such-file.json"]).0, 2);
    assert_eq!(relconv(&["check-laws", "--quantale", "nope"]).0, 2);
    assert_eq!(relconv(&["check-laws", "--quantale", "minplus", "--mode", "sideways"]).0, 2);
    assert_eq!(relconv(&["frobnicate"]).0, 2);
    let bad = scratch("bad.json", "{\"carrier\": [\"a\"], \"triples\": [[0, 0");
    let (code, _, err) = relconv(&["check-laws", "--rel", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn point_holds_exactly_on_point_intervals() {
    let (code, out, _) = relconv(&["eval", "--formula", "point", "--horizon", "3"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 10);
    for r in rows {
        let mut it = r.split_whitespace();
        let iv = it.next().unwrap();
        let v = it.next().unwrap();
        let (i, j) = iv.trim_matches(['[', ']']).split_once(',').unwrap();
        assert_eq!(v == "true", i == j, "{r}");
    }
}

#[test]
fn chop_of_two_atoms_on_the_whole_trace() {
    let trace = scratch(
        "trace.json",
        r#"{"horizon": 3, "stream": ["a","a","b","b"],
            "atoms": {"p": {"state_pred": "a"}, "q": {"intervals": [[1,3]]}}}"#,
    );
    let (code, out, _) = relconv(&["eval", "--trace", trace.to_str().unwrap(), "--formula", "p ; q", "--interval", "[0,3]"]);
    assert_eq!(code, 0);
    assert!(out.contains("[0,3]    true"), "{out}");
    let (code, out, _) = relconv(&["eval", "--trace", trace.to_str().unwrap(), "--formula", "q ; p", "--interval", "[0,3]"]);
    assert_eq!(code, 0);
    assert!(out.contains("[0,3]    false"), "{out}");
}

#[test]
fn eval_errors() {
    let (code, _, err) = relconv(&["eval", "--formula", "p & (q"]);
    assert_eq!(code, 2);
    assert!(err.contains("position 6"), "{err}");
    let (code, _, err) = relconv(&["eval", "--formula", "p"]);
    assert_eq!(code, 2);
    assert!(err.contains("unresolved atom `p`"));
}

#[test]
fn every_repro_case_exits_0() {
    for case in ["assoc-rel", "no-unit-strict", "weak-assoc", "weak-right-unit", "sd-left-distrib", "inf-right-annihilation", "tree-assoc"] {
        let (code, out, _) = relconv(&["repro", case]);
        assert_eq!(code, 0, "{case}: {out}");
        assert!(out.ends_with("REPRODUCED\n"));
    }
    assert_eq!(relconv(&["repro", "nothing"]).0, 2);
}

#[test]
fn durations_and_means() {
    let b = scratch("b.json", r#"{"breakpoints": [0, 1, 2], "values": [true, false]}"#);
    let c = scratch("c.json", r#"{"breakpoints": [0, 1, 2], "values": [false, true]}"#);
    let (b, c) = (b.to_str().unwrap(), c.to_str().unwrap());

    let (code, out, _) = relconv(&["--json", "duration", "--signal", b, "--lo", "0", "--hi", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"], 1.0);

    let (_, out, _) = relconv(&["--json", "duration", "--signal", b, "--signal2", c, "--mode", "min"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let sb = PcSignal::new(vec![0.0, 1.0, 2.0], vec![true, false]).unwrap();
    let sc = PcSignal::new(vec![0.0, 1.0, 2.0], vec![false, true]).unwrap();
    let lib = duration_conv_min(&sb, &sc, RInterval::new(0.0, 2.0).unwrap()).unwrap();
    assert_eq!(v["value"].to_string(), serde_json::to_value(lib).unwrap().to_string());

    let (code, out, _) = relconv(&["--json", "mean", "--signal", b, "--lo", "1", "--hi", "1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"], 0.0);

    assert_eq!(relconv(&["mean", "--signal", b, "--lo", "3", "--hi", "4"]).0, 2);
    assert_eq!(relconv(&["--grid", "0", "mean", "--signal", b]).0, 2);
}

#[test]
fn split_profile_csv() {
    let b = scratch("pb.json", r#"{"breakpoints": [0, 1], "values": [true]}"#);
    let csv = std::env::temp_dir().join(format!("relconv-profile-{}.csv", std::process::id()));
    let (code, _, _) = relconv(&[
        "--grid", "0.25", "duration", "--signal", b.to_str().unwrap(), "--signal2", b.to_str().unwrap(), "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,value");
    // ∫b[0,k] + ∫b[k,1] = 1 at every split
    assert_eq!(lines.len(), 6);
    assert!(lines[1..].iter().all(|l| l.ends_with(",1")), "{text}");
}

#[test]
fn allen_on_a_chain_and_a_diamond() {
    let (code, out, _) = relconv(&["allen", "--chain", "4"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("dv-associativity") && out.contains("refuted"));
    let poset = scratch("diamond.json", r#"{"carrier": ["b","x","y","t"], "leq": [[0,1],[0,2],[1,3],[2,3]]}"#);
    let (code, out, _) = relconv(&["allen", "--poset", poset.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("[b,t] contains incomparable x and y"), "{out}");
}

#[test]
fn itl_algebra_with_infinite_intervals() {
    let (code, out, _) = relconv(&["--samples", "100", "check-laws", "--itl", "--horizon", "2", "--infinite"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("right-annihilation") && out.contains("refuted"));
}

#[test]
fn help_exits_0() {
    let (code, out, _) = relconv(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("check-laws"));
}
