use std::process::{Command, Output};

use serde_json::Value;
use setpart_core::motzkin::LabeledMotzkinPath;
use setpart_core::partition::SetPartition;
use setpart_core::qseries::QPolynomial;

fn setpart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_setpart"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = setpart(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_str(&stdout(&all)).unwrap()
}

#[test]
fn enumerate_lists_in_rgf_order() {
    assert_eq!(stdout(&["enumerate", "3", "2"]), "1,2/3\n1,3/2\n1/2,3\n");
    assert_eq!(stdout(&["enumerate", "1", "1"]), "1\n");
    assert_eq!(stdout(&["enumerate", "2", "0"]), "");
    for line in stdout(&["enumerate", "5", "3"]).lines() {
        assert_eq!(line.parse::<SetPartition>().unwrap().to_string(), line);
    }
}

#[test]
fn enumerate_ordered_counts() {
    assert_eq!(stdout(&["enumerate", "3", "2", "--ordered"]).lines().count(), 6);
    let listed = json(&["enumerate", "4", "2"]);
    assert_eq!(listed.as_array().unwrap().len(), 7);
}

#[test]
fn enumerate_rejects_k_above_n() {
    assert_eq!(setpart(&["enumerate", "2", "3"]).status.code(), Some(2));
}

#[test]
fn stats_table() {
    assert_eq!(
        stdout(&["stats", "1,4,8/2,9/3,7/5,6"]),
        "mak,makp,lmak,lmakp\n9,10,10,9\n"
    );
    assert_eq!(
        stdout(&["stats", "1,4,8/2/3,7,9/5,6", "--stats", "mak_l", "--l", "2"]),
        "mak_2\n10\n"
    );
    assert_eq!(
        stdout(&["stats", "1,2,3", "--stats", "coords"]),
        "ros,rob,rcs,rcb,los,lob,lcs,lcb\n0,0,0,0,0,0,0,0\n"
    );
    let v = json(&["stats", "1,4,8/2,9/3,7/5,6", "--stats", "mak,bmaj"]);
    assert_eq!(v["stats"]["mak"], 9);
    assert_eq!(v["stats"]["bmaj"], 0);
}

#[test]
fn stats_per_element_rows() {
    let out = stdout(&["stats", "1,4,8/2,9/3,7/5,6", "--per-element", "--stats", "ros,rcb"]);
    assert_eq!(
        out,
        "element,1,4,8,2,9,3,7,5,6\nros,0,2,3,0,2,0,1,0,0\nrcb,3,3,1,2,0,1,0,0,0\n"
    );
    let nr = stdout(&["stats", "1,4,8/2/3,7,9/5,6", "--per-element", "--stats", "nrinv"]);
    assert!(nr.ends_with("nrinv,6,4,1,5,2,0,0,0,0\n"), "{nr}");
}

#[test]
fn stats_errors() {
    let bad = setpart(&["stats", "1,2/2"]);
    assert_eq!(bad.status.code(), Some(1));
    let parse = setpart(&["stats", "1 2"]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("column 3"));
    assert_eq!(setpart(&["stats", "1,2", "--stats", "foo"]).status.code(), Some(2));
}

#[test]
fn genfun_against_q_stirling() {
    assert_eq!(
        stdout(&["genfun", "4", "2", "mak", "--compare", "qstirling"]),
        "3*q + 3*q^2 + q^3\nEQUAL\n"
    );
    assert_eq!(stdout(&["genfun", "4", "4", "mak", "--compare", "qstirling"]), "q^6\nEQUAL\n");
    let ordered = stdout(&[
        "genfun",
        "3",
        "2",
        "mak+bmaj",
        "--ordered",
        "--compare",
        "qstirling-times-qfact",
    ]);
    assert!(ordered.ends_with("EQUAL\n"));
    let poly = ordered.lines().next().unwrap();
    assert_eq!(poly.parse::<QPolynomial>().unwrap().to_string(), poly);
}

#[test]
fn genfun_reports_a_difference() {
    let out = setpart(&["genfun", "4", "2", "bmaj", "--compare", "qstirling"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("DIFFER"));
}

#[test]
fn qstirling_values() {
    assert_eq!(stdout(&["qstirling", "4", "2"]), "3*q + 3*q^2 + q^3\n");
    assert_eq!(stdout(&["qstirling", "4", "2", "--shifted"]), "3 + 3*q + q^2\n");
    let v = json(&["qstirling", "4", "2"]);
    assert_eq!(v["coeffs"]["2"], 3);
}

#[test]
fn phi_and_phi_i() {
    assert_eq!(stdout(&["phi", "1,4,8/2/3,7,9/5,6"]), "1,6,7/2,3,9/4,5/8\n");
    assert_eq!(stdout(&["phi-i", "1,4,8/2/3/5,6,7,9", "--i", "3"]), "1,4,8/2/3,9/5,6,7\n");
    let cert: Value = serde_json::from_str(&stdout(&["phi", "1,4,8/2/3,7,9/5,6", "--certificate"])).unwrap();
    assert_eq!(cert["image"], "1,6,7/2,3,9/4,5/8");
    assert_eq!(cert["p_prime"]["gamma"], serde_json::json!([2, 1]));
    assert_eq!(setpart(&["phi-i", "1/2/3", "--i", "3"]).status.code(), Some(1));
}

#[test]
fn motzkin_conversions() {
    assert_eq!(stdout(&["motzkin", "1,2"]), "NE(1) SE(1)\n");
    let path = stdout(&["motzkin", "1,4,8/2/3,7,9/5,6"]);
    assert_eq!(path, "NE(1) E(1*) NE(1) E(1) NE(1) SE(3) E(2) SE(1) SE(1)\n");
    assert_eq!(stdout(&["motzkin", path.trim(), "--decode"]), "1,4,8/2/3,7,9/5,6\n");
    assert_eq!(
        stdout(&["motzkin", path.trim(), "--decode", "--reflect"]),
        "1,6,7/2,3,9/4,5/8\n"
    );
    let v = json(&["motzkin", "1,2"]);
    let round: LabeledMotzkinPath = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(round.to_string(), "NE(1) SE(1)");
    assert_eq!(stdout(&["motzkin", &v.to_string(), "--decode"]), "1,2\n");
    let art = stdout(&["motzkin", "1,2", "--ascii"]);
    assert_eq!(art, "/ \\\n1 1\n");
    assert_eq!(setpart(&["motzkin", "E(1)", "--decode"]).status.code(), Some(1));
}

#[test]
fn verify_suites() {
    let out = stdout(&["verify", "theorem2", "--n-max", "6"]);
    assert!(out.contains("n=6 k=3: 90 cases"));
    assert!(out.trim_end().ends_with("PASS"));
    let v = json(&["verify", "motzkin", "--n-max", "5"]);
    assert_eq!(v["failure_count"], 0);
    let all = json(&["--threads", "2", "verify", "all", "--n-max", "5"]);
    assert_eq!(all.as_array().unwrap().len(), 10);
    assert_eq!(setpart(&["verify", "theorem9"]).status.code(), Some(2));
}

#[test]
fn verify_is_thread_independent() {
    let mut one = json(&["verify", "theorem3", "--n-max", "7"]);
    let mut four = json(&["--threads", "4", "verify", "theorem3", "--n-max", "7"]);
    one["wall_time_seconds"] = Value::Null;
    four["wall_time_seconds"] = Value::Null;
    assert_eq!(one, four);
}
