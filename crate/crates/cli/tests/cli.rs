use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn powgrp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_powgrp"))
        .args(args)
        .env_remove("POWGRP_PARALLEL")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

fn file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn detect_hol7_json() {
    let o = powgrp(&[
        "detect",
        "hol(7)",
        "--law",
        "[[x^2,y^2]^3,y^3]",
        "--m",
        "2",
        "--n",
        "3",
        "--json",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["in_m"]["verdict"], "holds");
    assert_eq!(v["in_n"]["verdict"], "holds");
    assert_eq!(v["in_G"]["verdict"], "fails");
    assert_eq!(v["order_g"], 42);
    assert!(v.get("warning").is_none());
}

#[test]
fn detect_warns_on_non_coprime() {
    let o = powgrp(&[
        "detect", "Z(12)", "--law", "[x,y]", "--m", "2", "--n", "4", "--json",
    ]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["warning"]
        .as_str()
        .unwrap()
        .contains("not coprime"));
}

#[test]
fn law_syntax_errors_exit_2_with_position() {
    let o = powgrp(&["law-check", "Z(5)", "--law", "[x,"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("position 3"), "{}", stderr(&o));
}

#[test]
fn spec_errors_exit_2_with_position() {
    let o = powgrp(&["construct", "sd(Z(5),Z(4); t=<(2)"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("position"), "{}", stderr(&o));
    let o = powgrp(&["construct", "Q(8)"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn unknown_flags_are_rejected() {
    let o = powgrp(&["construct", "Z(5)", "--verbose"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("--verbose"));
    assert_eq!(code(&powgrp(&["frobnicate"])), 2);
}

#[test]
fn law_check_exit_codes_and_strategies() {
    assert_eq!(
        code(&powgrp(&["law-check", "heis3", "--law", "[[x,y],y]"])),
        0
    );
    assert_eq!(code(&powgrp(&["law-check", "hol(7)", "--law", "[x,y]"])), 1);
    let o = powgrp(&[
        "law-check",
        "heis3",
        "--law",
        "[x,y]",
        "--strategy",
        "exhaustive:1000",
        "--json",
    ]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["result"]["verdict"], "fails");
    assert_eq!(v["result"]["strategy"], "exhaustive");
    assert_eq!(
        code(&powgrp(&[
            "law-check",
            "heis3",
            "--law",
            "[x,y]",
            "--strategy",
            "sampled"
        ])),
        2
    );
}

#[test]
fn construct_and_power() {
    let o = powgrp(&["construct", "W4374", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["order"], 4374);
    assert_eq!(v["derived_length"], 3);
    assert_eq!(v["exponent"], 18);
    assert_eq!(v["nilpotency_class"], Value::Null);
    let o = powgrp(&["power", "W4374", "--m", "3", "--json"]);
    assert_eq!(json(&o)["power"]["order"], 162);
    let o = powgrp(&["construct", "heis3"]);
    assert!(stdout(&o).contains("nilpotency class: 2"));
}

#[test]
fn certify_files() {
    let pres = file("alphabet: a b\nrelators:\n[a,b]\n");
    let good = file("target: [a^2,b]\nstep: rel=0 sign=+1 conj=a\nstep: rel=0 sign=+1 conj=1\n");
    let bad = file("target: [a^2,b]\nstep: rel=0 sign=+1 conj=b\nstep: rel=0 sign=+1 conj=1\n");
    let broken = file("target: [a^2,b]\nstep: rel=0 sign=2 conj=b\n");
    let p = pres.path().to_str().unwrap();
    let o = powgrp(&["certify", p, good.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = powgrp(&["certify", p, bad.path().to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["step"], 2);
    let o = powgrp(&["certify", p, broken.path().to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    assert_eq!(code(&powgrp(&["certify", p, "/nonexistent/cert"])), 2);
}

#[test]
fn trace_check_bundled_and_corrupted() {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../core/data/traces/09_ba_xy.trace"
    );
    let o = powgrp(&["trace-check", path]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = std::fs::read_to_string(path).unwrap();
    let corrupted = text.replacen("step: pos=1 ", "step: pos=0 ", 1);
    assert_ne!(corrupted, text);
    let f = file(&corrupted);
    let o = powgrp(&["trace-check", f.path().to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["step"], 0);
}

#[test]
fn its_abelian() {
    let o = powgrp(&["its-abelian", "--m", "3", "--n", "4", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let stages = v["stages"].as_array().unwrap();
    assert_eq!(stages.len(), 3);
    assert!(stages.iter().all(|s| s["passed"] == true));
    let o = powgrp(&["its-abelian", "--m", "6", "--n", "9"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("not coprime"));
}

#[test]
fn truncation_witness() {
    let o = powgrp(&[
        "truncation-witness",
        "--m",
        "2",
        "--n",
        "3",
        "--bound",
        "5",
        "--json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["order"], 6);
    assert_eq!(v["abelian"], false);
    assert_eq!(
        code(&powgrp(&[
            "truncation-witness",
            "--m",
            "2",
            "--n",
            "3",
            "--bound",
            "2"
        ])),
        1
    );
    assert_eq!(
        code(&powgrp(&[
            "truncation-witness",
            "--m",
            "1",
            "--n",
            "3",
            "--bound",
            "5"
        ])),
        2
    );
}

#[test]
fn search_1458() {
    let o = powgrp(&["search-1458", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["order"], 1458);
    assert_eq!(v["derived_length"], 3);
}

fn without_timings(mut v: Value) -> Value {
    for row in v.as_array_mut().unwrap() {
        row.as_object_mut().unwrap().remove("millis");
    }
    v
}

#[test]
fn verify_paper_selection_and_stable_json() {
    let args = [
        "verify-paper",
        "--only",
        "nq2-goldens,W-order,hol7-law",
        "--json",
    ];
    let a = powgrp(&args);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    let rows = json(&a);
    let names: Vec<&str> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["W-order", "hol7-law", "nq2-goldens"]);
    assert!(rows
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["status"] == "pass"));
    let b = powgrp(&args);
    assert_eq!(without_timings(json(&a)), without_timings(json(&b)));
    let o = powgrp(&["verify-paper", "--only", "W-order,bogus"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("bogus"));
}

#[test]
fn verify_paper_full_run_passes() {
    let o = powgrp(&["verify-paper", "--parallel", "2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("26/26 checks passed"));
}

#[test]
fn parallelism_from_environment() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_powgrp"))
            .args(["verify-paper", "--only", "W-order"])
            .env("POWGRP_PARALLEL", v)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("1")), 0);
    assert_eq!(code(&run("lots")), 2);
    assert_eq!(code(&powgrp(&["--parallel", "0", "construct", "Z(3)"])), 2);
}
