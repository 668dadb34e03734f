use std::process::{Command, Output};

use serde::de::DeserializeOwned;
use serde::Serialize;

use vcalc::{BoundOutput, EvalReport, TableRow, VerifyReport};
use vcalc_core::coef::{int, rat, CoefPoly};
use vcalc_core::model::CountReport;

fn vcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vcalc"))
        .args(args)
        .env_remove("VCALC_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = vcalc(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

/// Parses JSON output and checks that re-emitting it gives the same document.
fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(args: &[&str]) -> T {
    let text = ok(args);
    let value: T = serde_json::from_str(&text).unwrap();
    let again: T = serde_json::from_str(&serde_json::to_string(&value).unwrap()).unwrap();
    assert_eq!(again, value);
    assert_eq!(
        serde_json::to_value(&value).unwrap(),
        serde_json::from_str::<serde_json::Value>(&text).unwrap()
    );
    value
}

#[test]
fn derive_closed_forms() {
    let text = ok(&["derive", "--ascii"]);
    assert!(text.contains("l(B)       = 2/3*p^3 - 2/3*p"), "{text}");
    assert!(text.contains("deg V      = 1/3*p^3 + 2/3*p"), "{text}");
    let pretty = ok(&["derive"]);
    assert!(pretty.contains("2/3·p³ − 2/3·p"), "{pretty}");
}

#[test]
fn derive_row_at_three() {
    let text = ok(&["derive", "--primes", "3", "--ascii"]);
    assert!(
        text.contains("p = 3: l(B) = 16, deg V = 11, l(Q) = 9, l(B_theta) = 1, l(Q0) = 1"),
        "{text}"
    );
}

#[test]
fn derive_json_round_trips() {
    let r: CountReport = round_trip(&["derive", "--primes", "3,5", "--format", "json"]);
    assert_eq!(r.evaluations[&5].l_b, int(80));
    let p = CoefPoly::p();
    assert_eq!(r.counts.l_b, (&p.pow(3) - &p).scale(&rat(2, 3)));
}

#[test]
fn derive_csv() {
    let text = ok(&["derive", "--primes", "7", "--format", "csv"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p,lambda,l_D,l_Q,l_Q0,l_B,l_B_theta,deg_V");
    assert!(lines[1].starts_with("symbolic,"));
    assert_eq!(lines[2], "7,10976,686,686,14,224,14,119");
}

#[test]
fn table_columns() {
    let rows: Vec<TableRow> = round_trip(&["table", "--primes", "3,5,7", "--format", "json"]);
    let l_b: Vec<_> = rows.iter().map(|r| r.l_b.clone()).collect();
    assert_eq!(l_b, [int(16), int(80), int(224)]);
    assert_eq!(rows[0].deg_v, int(11));
    assert_eq!(rows[0].p3_minus_deg_v, int(16));
    assert!(rows.iter().all(|r| r.routes_agree));
    let text = ok(&["table", "--primes", "3"]);
    assert!(text
        .lines()
        .nth(1)
        .unwrap()
        .split_whitespace()
        .eq(["3", "144", "9", "9", "16", "11", "16"]));
}

#[test]
fn table_usage_errors() {
    assert_eq!(vcalc(&["table"]).status.code(), Some(2));
    let o = vcalc(&["table", "--primes", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("p > 2"));
    assert_eq!(vcalc(&["derive", "--primes", "9"]).status.code(), Some(2));
    assert_eq!(vcalc(&["derive", "--primes", "-3"]).status.code(), Some(2));
}

#[test]
fn verify_model_suite() {
    let text = ok(&["verify", "--suite", "model"]);
    assert!(
        text.contains("alpha_c5 == p³(p²−1)/6 · α³HΘ²: PASS"),
        "{text}"
    );
    let r: VerifyReport = round_trip(&["verify", "--suite", "model", "--format", "json"]);
    assert!(r.passed);
}

#[test]
fn verify_ring_and_chern_suites() {
    let text = ok(&["verify", "--suite", "ring"]);
    assert!(
        text.contains("normal-form idempotence (1000 random cases): PASS"),
        "{text}"
    );
    let text = ok(&["verify", "--suite", "chern"]);
    assert!(
        text.contains("Newton c5 coefficients vs closed form"),
        "{text}"
    );
    let csv = ok(&["verify", "--suite", "bounds", "--format", "csv"]);
    assert!(csv.starts_with("suite,name,passed,detail"));
}

#[test]
fn verify_seed_is_read_from_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_vcalc"))
        .args(["verify", "--suite", "ring", "--format", "json"])
        .env("VCALC_SEED", "42")
        .output()
        .unwrap();
    let r: VerifyReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r.seed, 42);
    let bad = Command::new(env!("CARGO_BIN_EXE_vcalc"))
        .args(["verify", "--suite", "ring"])
        .env("VCALC_SEED", "seed")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn eval_examples() {
    assert_eq!(ok(&["eval", "xi1^2"]).trim(), "−2·Θ·f");
    assert_eq!(ok(&["eval", "xi1^2", "--ascii"]).trim(), "-2*Theta*f");
    assert_eq!(ok(&["eval", "H^4"]).trim(), "0");
    let text = ok(&["eval", "alpha^3*H*Theta^2", "--integrate", "--ascii"]);
    assert!(text.ends_with("integral = 8\n"), "{text}");
    let r: EvalReport = round_trip(&[
        "eval",
        "alpha^3*H*Theta^2",
        "--integrate",
        "--format",
        "json",
    ]);
    assert_eq!(r.integral, Some(CoefPoly::from_int(8)));
    assert_eq!(r.canonical, "Theta^2*alpha^3*H");
}

#[test]
fn eval_errors() {
    let o = vcalc(&["eval", "alpha + beta"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("position 8"), "{}", stderr(&o));
    let o = vcalc(&["eval", "f*Theta", "--integrate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bound_subbundle() {
    let text = ok(&[
        "bound", "--r", "5", "--n", "2", "--g", "2", "--delta", "3", "--ascii",
    ]);
    assert_eq!(text, "epsilon = 0\nbound = 0\n");
    let r: BoundOutput = round_trip(&[
        "bound", "--r", "2", "--n", "1", "--g", "2", "--delta", "0", "--format", "json",
    ]);
    assert!(matches!(r, BoundOutput::Subbundle { epsilon: 1, .. }));
}

#[test]
fn bound_margin() {
    let text = ok(&["bound", "--g", "2", "--p", "3", "--d", "-2", "--ascii"]);
    assert!(text.contains("margin = 1/3\n"), "{text}");
    let r: BoundOutput = round_trip(&[
        "bound", "--g", "3", "--p", "5", "--d", "-4", "--format", "json",
    ]);
    match r {
        BoundOutput::Destabilization {
            destabilization, ..
        } => {
            assert_eq!(destabilization.margin, rat(2, 5));
            assert!(destabilization.satisfied);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn bound_usage_errors() {
    assert_eq!(
        vcalc(&["bound", "--r", "2", "--n", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(vcalc(&["bound", "--g", "2"]).status.code(), Some(2));
    assert_eq!(
        vcalc(&["bound", "--g", "1", "--p", "3", "--d", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        vcalc(&["bound", "--g", "2", "--p", "2", "--d", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(vcalc(&["frobnicate"]).status.code(), Some(2));
}
