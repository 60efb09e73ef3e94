use std::process::{Command, Output};

use qschroeder::verifier::IdentityReport;
use qschroeder::{Rational, TruncSeries};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qschroeder")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn gen_examples() {
    let o = run(&["gen", "--family", "a", "--q", "1", "--x", "1", "--y", "1", "--nmax", "5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1, 1, 3, 11, 45, 197\n");
    let o = run(&["gen", "--family", "carlitz", "--mode", "qpoly", "--nmax", "3"]);
    assert_eq!(stdout(&o).trim().rsplit(", ").next(), Some("1+2q+q²+q³"));
    let o = run(&["gen", "--family", "A", "--q", "1", "--x", "1", "--y", "1", "--nmax", "4"]);
    assert_eq!(stdout(&o), "1, 2, 6, 22, 90\n");
    let o = run(&["gen", "--family", "little-schroeder", "--nmax", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,value\n0,1\n1,1\n2,3\n3,11\n");
}

#[test]
fn gen_json_has_exact_terms() {
    let o = run(&["gen", "--family", "a", "--q", "1/2", "--nmax", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["terms"], serde_json::json!(["1", "1", "5/2"]));
    assert_eq!(v["q"], "1/2");
}

#[test]
fn series_examples() {
    let o = run(&["series", "--which", "h", "--q", "2", "--x", "1", "--y", "1", "--order", "2"]);
    assert!(stdout(&o).starts_with("1, 2"));
    let o = run(&["series", "--which", "f", "--q", "1/3", "--x", "1/3", "--y", "-1/3", "--order", "4"]);
    assert_eq!(stdout(&o), "1, -1/3, 1/27, -1/729, 1/59049\n");
    let o = run(&["series", "--which", "f", "--method", "closed", "--q", "1/3", "--x", "1/3", "--y", "-1/3", "-N", "4"]);
    assert_eq!(stdout(&o), "1, -1/3, 1/27, -1/729, 1/59049\n");
    let o = run(&["series", "--which", "e", "--q", "1"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("(q;q)_1"));
}

#[test]
fn series_json_round_trips() {
    let o = run(&["series", "--which", "H", "--q", "2/3", "--x", "3", "--y", "-1/2", "--order", "8", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let s: TruncSeries<Rational> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(s.order(), 8);
    assert_eq!(serde_json::to_string_pretty(&s).unwrap() + "\n", stdout(&o));
}

#[test]
fn cf_examples() {
    let o = run(&["cf", "--id", "cf-1.6", "--order", "6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("1, 1, 3, 11, 45, 197, 903"));
    let rr = run(&["cf", "--id", "cf-rr", "--q", "1/2", "--order", "5"]);
    let direct = run(&["series", "--which", "f", "--method", "closed", "--q", "1/2", "--x", "0", "--y", "-1/2", "--order", "5"]);
    assert_eq!(stdout(&rr).lines().next(), stdout(&direct).lines().next());
    let o = run(&["cf", "--id", "nonsense"]);
    assert_eq!(code(&o), 2);
    let o = run(&["cf", "--id", "cf-3.4", "--q", "0"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn cf_depth_reports_a_convergent() {
    let o = run(&["cf", "--id", "cf-2.5", "--order", "4", "--depth", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["depth"], 2);
    assert_eq!(v["stabilized"], false);
    let s: TruncSeries<Rational> = serde_json::from_value(v["series"].clone()).unwrap();
    assert_eq!(s.coeffs()[..2], [Rational::from(1), Rational::from(2)]);
}

#[test]
fn verify_default_plan_passes() {
    let o = run(&["verify", "--seed", "42", "--points", "5", "--order", "16"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let reports: Vec<IdentityReport> = serde_json::from_slice(&o.stdout).unwrap();
    assert!(reports.iter().all(IdentityReport::passed));
    assert!(reports.iter().any(|r| r.id == "cf-jacobi"));
}

#[test]
fn verify_selected_and_vacuous() {
    let o = run(&["verify", "--ids", "eq-3.6,eq-cauchy"]);
    assert_eq!(code(&o), 0);
    let reports: Vec<IdentityReport> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(reports.iter().map(|r| r.id.as_str()).collect::<Vec<_>>(), ["eq-3.6", "eq-cauchy"]);
    let o = run(&["verify", "--points", "0", "--order", "4"]);
    assert_eq!(code(&o), 0);
    let reports: Vec<IdentityReport> = serde_json::from_slice(&o.stdout).unwrap();
    assert!(reports.iter().all(|r| r.points.is_empty()));
    let o = run(&["verify", "--ids", "eq-0.0"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_exit_code_tracks_verdict() {
    let o = run(&["verify", "--ids", "eq-2.7,eq-2.2", "--order", "6", "--corrupt", "eq-2.7:3"]);
    assert_eq!(code(&o), 1);
    let reports: Vec<IdentityReport> = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!reports[0].passed());
    assert!(reports[0].points.iter().all(|p| p.mismatch_order == Some(3)));
    assert!(reports[1].passed());
    let o = run(&["verify", "--ids", "eq-2.7", "--order", "6"]);
    assert_eq!(code(&o), 0);
    let o = run(&["verify", "--ids", "eq-2.7", "--corrupt", "nonsense"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn runs_are_deterministic() {
    for args in [
        &["verify", "--ids", "eq-2.10,eq-3.7-i2,cf-3.3", "--order", "8", "--seed", "7"][..],
        &["series", "--which", "F", "--q", "3/2", "--x", "2", "--y", "1/2", "--format", "json"][..],
        &["cf", "--id", "cf-jacobi", "--q", "2/3", "--x", "1/2", "--y", "3", "--order", "10", "--format", "json"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
    let a = run(&["verify", "--ids", "eq-2.10", "--order", "6", "--seed", "1"]).stdout;
    let b = run(&["verify", "--ids", "eq-2.10", "--order", "6", "--seed", "2"]).stdout;
    assert_ne!(a, b);
}

#[test]
fn hankel_examples() {
    let o = run(&["hankel", "--family", "a", "--q", "1", "--x", "1", "--y", "1", "--nmax", "3"]);
    assert_eq!(stdout(&o), "1, 2, 8\n");
    let o = run(&["hankel", "--family", "a", "--nmax", "1"]);
    assert_eq!(stdout(&o), "1\n");
    let o = run(&["hankel", "--family", "A", "--q", "1", "--x", "1", "--y", "1", "--nmax", "2"]);
    assert_eq!(stdout(&o), "1, 2\n");
    let o = run(&["hankel", "--family", "catalan", "--nmax", "4", "--offset", "1", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,det\n1,1\n2,1\n3,1\n4,1\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["gen"])), 2);
    assert_eq!(code(&run(&["gen", "--family", "nope"])), 2);
    assert_eq!(code(&run(&["gen", "--family", "a", "--q", "1/0"])), 2);
    assert_eq!(code(&run(&["gen", "--family", "little-schroeder", "--mode", "qpoly"])), 2);
    assert_eq!(code(&run(&["series", "--which", "G"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}
