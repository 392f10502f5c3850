use std::process::{Command, Output};

use odsq_core::{PiBreakdown, Report, Strategy};

fn odsq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_odsq"))
        .args(args)
        .env_remove("ODSQ_SIEVE_CACHE")
        .output()
        .expect("run odsq")
}

fn stdout(args: &[&str]) -> String {
    let out = odsq(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn pi_text_and_json() {
    let text = stdout(&["pi", "100", "--strategy", "oracle"]);
    assert!(text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["pi", "25"]));
    let text = stdout(&["pi", "2"]);
    assert!(text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["pi", "1"]));

    let json = stdout(&["pi", "1000", "--format", "json"]);
    assert!(json.starts_with("{\"x\":1000,"));
    let b: PiBreakdown = serde_json::from_str(&json).unwrap();
    assert_eq!((b.pi, b.n, b.m_n, b.w_n, b.m_corr), (168, Some(498), 499, 332, 1));
    assert_eq!(b.strategy, Strategy::OracleExact);
    assert_eq!(serde_json::to_string(&b).unwrap(), json.trim_end());
}

#[test]
fn pi_paper_strategy_reports_classes() {
    let json = stdout(&["pi", "100", "--strategy", "paper", "--format", "json"]);
    let b: PiBreakdown = serde_json::from_str(&json).unwrap();
    assert_eq!(b.pi, 25);
    assert_eq!(b.class_counts["kl"], 30);
    assert_eq!(b.pi, b.m_n as i64 - b.w_n + b.m_corr as i64);
}

#[test]
fn pi_csv_has_header() {
    let csv = stdout(&["pi", "10", "--format", "csv"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "x,n,strategy,m_n,w_n,m,pi,class_counts");
    assert_eq!(lines.next().unwrap(), "10,3,oracle,4,1,1,4,");
}

#[test]
fn bad_input_exits_two() {
    for args in [&["pi", "1"][..], &["pi", "abc"], &["count", "zz", "--at-n", "3"], &["count", "kl"]] {
        let out = odsq(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn count_examples() {
    assert_eq!(stdout(&["count", "p:5", "--at-x", "55", "--corrected"]).trim(), "3");
    assert_eq!(stdout(&["count", "3", "--at-n", "9"]).trim(), "3");
    assert_eq!(stdout(&["count", "kpow:2", "--at-x", "25"]).trim(), "2");
    assert_eq!(
        stdout(&["count", "p:5", "--at-n", "26", "--paper", "--corrected"]).trim(),
        "paper=1 corrected=3"
    );
    assert_eq!(
        stdout(&["count", "kkl", "--at-x", "75", "--paper", "--corrected", "--format", "json"]).trim(),
        r#"{"class":"kkl","n":36,"paper":4,"corrected":3}"#
    );
    // No printed formula for p = 13.
    assert_eq!(odsq(&["count", "p:13", "--at-n", "100", "--paper"]).status.code(), Some(2));
}

#[test]
fn gen_examples() {
    assert_eq!(stdout(&["gen", "5"]).trim(), "2 3 5 7 11");
    assert_eq!(stdout(&["gen", "5", "--include-two"]).trim(), "2 3 5 7 11");
    assert_eq!(stdout(&["gen", "1", "--no-include-two"]).trim(), "3");
    let csv = stdout(&["gen", "1000", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "index,prime");
    assert_eq!(lines.len(), 1001);
    assert_eq!(*lines.last().unwrap(), "1000,7919");
    let raw = stdout(&["gen", "5", "--strict-paper"]);
    let raw: Vec<u64> = raw.split_whitespace().map(|v| v.parse().unwrap()).collect();
    assert_eq!(&raw[..5], &[3, 5, 7, 11, 13]);
    assert!(raw.len() > 5);
}

#[test]
fn tseries_examples() {
    assert_eq!(stdout(&["tseries", "3,5", "--limit", "31"]).trim(), "7 11 13 17 19 23 29 31");
    assert_eq!(stdout(&["tseries", "3", "--limit", "13"]).trim(), "5 7 11 13");
    assert_eq!(stdout(&["tseries", "5", "--limit", "7"]).trim(), "7");
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["tseries", "3,5", "--limit", "40", "--format", "json"])).unwrap();
    assert_eq!(json["period"], 30);
    assert_eq!(json["seeds"].as_array().unwrap().len(), 8);
    assert_eq!(odsq(&["tseries", "3,3", "--limit", "10"]).status.code(), Some(2));
}

#[test]
fn verify_examples() {
    let out = odsq(&["verify", "--max-n", "10000", "--classes", "p:7,p:11", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.rows.len(), 4);
    assert!(report.rows.iter().all(|r| r.delta == 0));
    let back = serde_json::to_string(&report).unwrap();
    assert_eq!(serde_json::from_str::<Report>(&back).unwrap(), report);

    let out = odsq(&["verify", "--classes", "p:5", "--variant", "paper", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("WARN"));
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.rows[0].location, 11);
    assert_ne!(report.rows[0].delta, 0);

    let out = odsq(&["verify", "--max-n", "0", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.rows.is_empty());

    let csv = stdout(&["verify", "--max-n", "100", "--classes", "kl", "--variant", "corrected", "--format", "csv"]);
    assert_eq!(
        csv.lines().next().unwrap(),
        "quantity,variant,location,paper,oracle,delta,mismatches,checked"
    );
}

#[test]
fn bench_rows() {
    let json = stdout(&["bench", "--x-max", "1e2", "--repeats", "1", "--format", "json"]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&json).unwrap();
    let names: Vec<&str> = rows.iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["pi(oracle)", "pi(paper)", "gen"]);
    assert!(rows.iter().all(|r| r["repeats"] == 1 && r["x_max"] == 100));
}

#[test]
fn sieve_cache_is_written_and_reused() {
    let dir = std::env::temp_dir().join(format!("odsq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sieve.odsq");
    let run = |x: &str| {
        Command::new(env!("CARGO_BIN_EXE_odsq"))
            .args(["pi", x, "--format", "json"])
            .env("ODSQ_SIEVE_CACHE", &path)
            .output()
            .unwrap()
    };
    let first = run("5000");
    assert!(first.status.success());
    let bytes = std::fs::read(&path).unwrap();
    assert_eq!(&bytes[..4], b"ODSQ");
    let second = run("4000");
    let b: PiBreakdown = serde_json::from_slice(&second.stdout).unwrap();
    assert_eq!(b.pi, 550);
    std::fs::remove_dir_all(&dir).unwrap();
}
