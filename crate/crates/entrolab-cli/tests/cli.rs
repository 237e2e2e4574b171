//! End-to-end tests of the binary: wire formats, verdicts, exit codes,
//! and byte-determinism of the verification report.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_entrolab"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("entrolab-cli-tests");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join(name);
    std::fs::write(&path, contents).expect("write temp file");
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const COIN: &str =
    r#"{"outcomes": [{"label": "h", "mass": "1/2"}, {"label": "t", "mass": "1/2"}]}"#;
const SKEW: &str = r#"{"outcomes": [{"label": "a", "mass": "1/2"},
    {"label": "b", "mass": "1/4"}, {"label": "c", "mass": "1/4"}]}"#;

#[test]
fn entropy_pair_matches_wire_format() {
    let coin = write_temp("coin.json", COIN);
    let out = bin()
        .args(["entropy", "--dist"])
        .arg(&coin)
        .args(["--functional", "pair"])
        .output()
        .expect("run");
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next().unwrap(), "(1*log(2), 1*log(2))");
}

#[test]
fn entropy_functionals() {
    let skew = write_temp("skew.json", SKEW);
    for (functional, expected) in [
        ("shannon", "3/2*log(2)"),
        ("hartley", "1*log(3)"),
        ("renyi:2", "3*log(2) - 1*log(3)"),
    ] {
        let out = bin()
            .args(["entropy", "--dist"])
            .arg(&skew)
            .args(["--functional", functional])
            .output()
            .expect("run");
        assert!(out.status.success(), "{functional}");
        assert_eq!(
            stdout(&out).lines().next().unwrap(),
            expected,
            "{functional}"
        );
    }
}

#[test]
fn order_verdicts_and_exit_codes() {
    let coin = write_temp("coin2.json", COIN);
    let skew = write_temp("skew2.json", SKEW);
    // the coin majorizes the three-point space: exit 0, "true"
    let out = bin()
        .args(["order", "--lhs"])
        .arg(&coin)
        .arg("--rhs")
        .arg(&skew)
        .args(["--relation", "majorize"])
        .output()
        .expect("run");
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "true");
    // the reverse fails: exit 1, "false"
    let out = bin()
        .args(["order", "--lhs"])
        .arg(&skew)
        .arg("--rhs")
        .arg(&coin)
        .args(["--relation", "majorize"])
        .output()
        .expect("run");
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out).trim(), "false");
}

#[test]
fn order_json_certificate_replays() {
    let coin = write_temp("coin3.json", COIN);
    let skew = write_temp("skew3.json", SKEW);
    let out = bin()
        .args(["order", "--lhs"])
        .arg(&coin)
        .arg("--rhs")
        .arg(&skew)
        .args(["--relation", "majorize", "--json"])
        .output()
        .expect("run");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["holds"], true);
    assert!(v["transfers"].as_array().is_some());
}

#[test]
fn ab_dominates_vocabulary() {
    for (lhs, rhs, expected) in [
        ("4", "2,2", "incomparable"),
        ("4", "2", "dominates"),
        ("2", "4", "dominated"),
        ("2,4", "4,2", "equal"),
    ] {
        let out = bin()
            .args(["ab", "dominates", "--lhs", lhs, "--rhs", rhs])
            .output()
            .expect("run");
        assert!(out.status.success());
        assert_eq!(stdout(&out).trim(), expected, "{lhs} vs {rhs}");
    }
}

#[test]
fn usage_errors_exit_two() {
    let out = bin().args(["bogus-subcommand"]).output().expect("run");
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args([
            "entropy",
            "--dist",
            "/nonexistent.json",
            "--functional",
            "pair",
        ])
        .output()
        .expect("run");
    assert_eq!(out.status.code(), Some(2));
    let skew = write_temp("skew4.json", SKEW);
    let out = bin()
        .args(["entropy", "--dist"])
        .arg(&skew)
        .args(["--functional", "renyi:1"])
        .output()
        .expect("run");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_report_is_deterministic() {
    let run = || {
        let out = bin()
            .args([
                "verify",
                "--suite",
                "range-law",
                "--seed",
                "123",
                "--cases",
                "50",
            ])
            .output()
            .expect("run");
        assert!(out.status.success());
        stdout(&out)
    };
    let a = run();
    let b = run();
    assert_eq!(a, b, "report must be byte-identical for a fixed seed");
    let v: serde_json::Value = serde_json::from_str(&a).expect("json");
    assert_eq!(v["schema"], "entrolab-report/1");
    assert_eq!(v["failures"], 0);
}

#[test]
fn verify_with_jobs_matches_sequential() {
    let run = |jobs: &str| {
        let out = bin()
            .args([
                "verify", "--suite", "exactlog", "--seed", "5", "--cases", "40", "--jobs", jobs,
            ])
            .output()
            .expect("run");
        assert!(out.status.success());
        stdout(&out)
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn monoid_leq_queries() {
    let pres = write_temp("pres.txt", "a >= b\n");
    for (query, expected) in [("a+a >= b+b", "proven"), ("b >= a", "unknown")] {
        let out = bin()
            .args(["monoid", "leq", "--presentation"])
            .arg(&pres)
            .args(["--query", query, "--depth", "6"])
            .output()
            .expect("run");
        assert!(out.status.success(), "{query}");
        assert_eq!(stdout(&out).trim(), expected, "{query}");
    }
}

#[test]
fn cond_tower_and_submod() {
    let tower = write_temp(
        "tower.json",
        r#"{"dist": {"outcomes": [
              {"label": "0", "mass": "1/4"}, {"label": "1", "mass": "1/4"},
              {"label": "2", "mass": "1/4"}, {"label": "3", "mass": "1/4"}]},
            "maps": [{"0": "e", "1": "o", "2": "e", "3": "o"}]}"#,
    );
    let out = bin()
        .args(["cond", "entropy", "--base"])
        .arg(&tower)
        .output()
        .expect("run");
    assert!(out.status.success());
    // H(uniform 4) - H(uniform 2) = log 2
    assert_eq!(stdout(&out).lines().next().unwrap(), "1*log(2)");

    let out = bin()
        .args(["cond", "submod", "--eps", "1/8"])
        .output()
        .expect("run");
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["strict"], true);
    assert_eq!(v["hartley"]["p"], "1*log(5)");
    // out-of-range epsilon is a usage error
    let out = bin()
        .args(["cond", "submod", "--eps", "1/2"])
        .output()
        .expect("run");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lprob_truncation_report() {
    let out = bin()
        .args(["lprob", "truncation", "--p", "1/2", "--n", "4", "--report"])
        .output()
        .expect("run");
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["entropy"], "7/4*log(2)");
}

#[test]
fn config_file_overrides_naturality_constants() {
    let cfg = write_temp("cfg.txt", "naturality_field=3\n");
    let out = bin()
        .args(["--config"])
        .arg(&cfg)
        .args(["naturality", "--functor", "vect_to_prob", "--object", "2"])
        .output()
        .expect("run");
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("2*log(3)"), "field override ignored: {text}");
    assert!(text.contains("commutes: true"));
}

#[test]
fn witness_search_emits_replayed_certificate() {
    let p = write_temp(
        "wp.json",
        r#"{"outcomes": [{"label": "a", "mass": "2/5"}, {"label": "b", "mass": "2/5"},
            {"label": "c", "mass": "1/10"}, {"label": "d", "mass": "1/10"}]}"#,
    );
    let q = write_temp(
        "wq.json",
        r#"{"outcomes": [{"label": "x", "mass": "1/2"}, {"label": "y", "mass": "1/4"},
            {"label": "z", "mass": "1/4"}]}"#,
    );
    let out = bin()
        .args(["witness-search", "--lhs"])
        .arg(&p)
        .arg("--rhs")
        .arg(&q)
        .args(["--budget", "depth=2,support=4,den=16,candidates=2000"])
        .output()
        .expect("run");
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["found"], true);
    assert_eq!(v["replay_verified"], true);
}
