use std::process::Command as Proc;

use exactcat_cli::commands::{bundled_fixtures, A3_FIXTURE};
use exactcat_cli::{parse_spec, run, Command, Options, Verdict};

fn bin() -> Proc {
    Proc::new(env!("CARGO_BIN_EXE_exactcat"))
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn quotient_reports_single_nonzero_entry() {
    let doc = parse_spec("a3", A3_FIXTURE).unwrap();
    let r = run(Command::Quotient, Some(&doc), &Options::default());
    assert_eq!(r.exit_code, 0);
    let table = &r.sections[0].facts["qhom"]["table"];
    let nonzero: Vec<(usize, usize)> = (0..6)
        .flat_map(|i| (0..6).map(move |j| (i, j)))
        .filter(|&(i, j)| table[i][j] != 0)
        .collect();
    assert_eq!(nonzero, vec![(5, 5)]);
}

#[test]
fn classes_refutation_trace_in_text() {
    let out = bin()
        .args(["classes", &fixture("a3_projinj.json"), "--conflation", "ext_P2_S1", "--format", "text"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("not in S: 3 candidate subobject(s) refuted"), "{text}");
}

#[test]
fn failed_expectation_exits_one_with_witness() {
    let text = A3_FIXTURE.replace(r#""pseudo_cluster_tilting": true"#, r#""pseudo_cluster_tilting": false"#);
    let doc = parse_spec("a3", &text).unwrap();
    let r = run(Command::CheckPct, Some(&doc), &Options::default());
    assert_eq!(r.verdict, Verdict::Fail);
    assert_eq!(r.exit_code, 1);
    assert!(r.sections[0].witness.is_some());
}

#[test]
fn refused_bound_exits_two() {
    let doc = parse_spec("a3", A3_FIXTURE).unwrap();
    let opts = Options {
        bound: Some(1),
        conflation: Some("ext_P2_S1".into()),
        ..Options::default()
    };
    let r = run(Command::Classes, Some(&doc), &opts);
    assert_eq!(r.verdict, Verdict::RefusedBound);
    assert_eq!(r.exit_code, 2);
    let out = bin()
        .args(["classes", &fixture("a3_projinj.json"), "--conflation", "ext_P2_S1", "--bound", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_codes_match_verdicts() {
    for doc in bundled_fixtures() {
        for c in [Command::CheckPct, Command::Quotient, Command::Classes] {
            let r = run(c, Some(&doc), &Options::default());
            let worst = r.sections.iter().map(|s| s.verdict).max().unwrap();
            assert_eq!(r.exit_code, worst.exit_code());
            assert_eq!(r.exit_code, 0, "{}", r.to_text());
        }
    }
}

#[test]
fn invalid_spec_reports_errors() {
    let dir = std::env::temp_dir().join("exactcat-cli-invalid.json");
    std::fs::write(
        &dir,
        r#"{"schema":"exactcat/1","field":{"char":2},"quiver":{"vertices":["1","2"],"arrows":[{"name":"a","from":"1","to":"2"}]},"objects":{"X":{"dims":{"1":1,"2":1},"maps":{"a":[[1,1]]}}}}"#,
    )
    .unwrap();
    let out = bin().args(["check-pct", dir.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("object X, arrow a: expected shape 1x1, got 1x2"), "{err}");
}

#[test]
fn out_flag_writes_json_report() {
    let path = std::env::temp_dir().join("exactcat-cli-report.json");
    let out = bin()
        .args(["check-pct", &fixture("a3_projinj.json"), "--out", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], "exactcat-report/1");
    assert_eq!(v["verdict"], "pass");
}
