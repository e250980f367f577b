use std::process::Command;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use sl2_boundary::arith::rat;
use sl2_boundary::model::{parse_field_expr, random_field, SampleShape};

fn sl2bc(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sl2bc"))
        .args(args)
        .env_remove(sl2bc::ORDER_ENV)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).expect("valid json")
}

#[test]
fn h_series_example() {
    let (code, out, _) = sl2bc(&["series", "--kind", "H", "--h0", "2", "--order", "1"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let values: Vec<&str> = v["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["value"].as_str().unwrap())
        .collect();
    assert_eq!(values, ["3/4", "-7/36"]);
}

#[test]
fn generic_weight_is_printed_as_h0() {
    let (code, out, _) = sl2bc(&["series", "--kind", "K", "--order", "2"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["h0"], "generic");
    assert_eq!(v["coefficients"][1]["value"], "(1)/(h0 - 2)");
}

#[test]
fn first_kind_example() {
    let (code, out, _) = sl2bc(&[
        "solve", "--kind", "first", "--d", "4", "--w0", "-1/4", "--f0", "x1^2", "--order", "6",
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    let fields: Vec<&str> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["field"].as_str().unwrap())
        .collect();
    assert_eq!(fields, ["x1^2", "2*r^2"]);
    assert_eq!(v["residual_order"], "inf");
    assert_eq!(v["N"], 6);
    assert_eq!(v["kind"], "first");
}

#[test]
fn truncated_solution_reports_an_integer_residual_order() {
    let (code, out, _) = sl2bc(&[
        "solve", "--kind", "first", "--d", "4", "--w0", "-1/4", "--f0", "x1^4", "--order", "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["residual_order"], 1);
}

#[test]
fn second_kind_and_alpha() {
    let (code, out, _) = sl2bc(&["solve", "--kind", "second", "--d", "4", "--w0", "-1/4", "--f0", "1", "--order", "4"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["terms"][0]["sigma_power"], "5/2");
    let (code, _, err) = sl2bc(&[
        "solve", "--kind", "second", "--d", "4", "--w0", "-1/4", "--f0", "1", "--alpha", "1",
    ]);
    assert_eq!(code, 3);
    assert!(err.contains("no solution"));
}

#[test]
fn log_kinds() {
    let (code, out, _) = sl2bc(&["solve", "--kind", "log", "--d", "4", "--w0", "-1/2", "--f0", "x1^2", "--order", "4"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let logs: Vec<&Value> = v["terms"].as_array().unwrap().iter().filter(|t| t["log"] == true).collect();
    assert_eq!(logs.len(), 1);
    assert_eq!(logs[0]["field"], "-r^2*log(r)");
    let (code, out, _) = sl2bc(&["solve", "--kind", "logdensity", "--d", "4", "--f0", "x1^2 + x2^2", "--order", "4"]);
    assert_eq!(code, 0);
    assert!(json(&out)["terms"].as_array().unwrap().iter().all(|t| t["log"] == false));
}

#[test]
fn exit_codes() {
    let (code, _, err) = sl2bc(&["solve", "--kind", "first", "--d", "4", "--w0", "-1/4", "--f0", "x1^(1/2)"]);
    assert_eq!(code, 2);
    assert!(err.contains("\"kind\":\"parse\""));
    let (code, _, err) = sl2bc(&["series", "--kind", "K", "--h0", "3", "--order", "4"]);
    assert_eq!(code, 3);
    assert!(err.contains("h0 = 3"));
    let (code, _, err) = sl2bc(&["solve", "--kind", "first", "--d", "4", "--w0", "-1/2", "--f0", "x1^3", "--order", "4"]);
    assert_eq!(code, 3);
    assert!(err.contains("obstructed"));
    let (code, _, _) = sl2bc(&["series", "--kind", "K", "--bogus", "1"]);
    assert_eq!(code, 2);
    let (code, _, _) = sl2bc(&["qcurv", "--n", "3", "--omega", "x1"]);
    assert_eq!(code, 3);
}

#[test]
fn order_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_sl2bc"))
        .args(["series", "--kind", "K", "--h0", "1/2"])
        .env(sl2bc::ORDER_ENV, "3")
        .output()
        .unwrap();
    let v = json(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 4);
    let (_, out, err) = sl2bc(&["series", "--kind", "K", "--h0", "1/2"]);
    assert_eq!(json(&out)["order"], 10);
    assert!(err.is_empty());
    let (code, _, err) = sl2bc(&["series", "--kind", "K", "--h0", "1/2", "--order", "41"]);
    assert_eq!(code, 0);
    assert!(err.starts_with("warning"));
}

#[test]
fn gjms_and_qcurv() {
    let (code, out, _) = sl2bc(&["gjms", "--k", "2", "--d", "4"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["constant"], "1");
    assert_eq!(v["tangential"], true);
    let (code, out, _) = sl2bc(&["gjms", "--k", "3", "--d", "4"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["zero_restriction"], true);
    let (code, out, _) = sl2bc(&["qcurv", "--n", "2", "--omega", "x1^2"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["q"], "2");
}

#[test]
fn algebra_reduces_words() {
    let (code, out, _) = sl2bc(&["algebra", "--word", "y x", "--h0", "generic"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["result"], "(-h0)*f + x y f");
    let (code, out, _) = sl2bc(&["algebra", "--word", "x y", "--contraction"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["result"], "x y f");
    let (code, out, _) = sl2bc(&["algebra", "--word", "y O", "--h0", "4", "--order", "8"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["result"], "0");
    let (code, _, _) = sl2bc(&["algebra", "--word", "y ?"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_logops_passes_deterministically() {
    let a = sl2bc(&["verify", "--suite", "logops", "--deterministic"]);
    let b = sl2bc(&["verify", "--suite", "logops", "--deterministic"]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
    let v = json(&a.1);
    assert_eq!(v["status"], "pass");
    assert!(v.get("timing").is_none());
    let names: Vec<&str> = v["cases"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    let (_, timed, _) = sl2bc(&["verify", "--suite", "sl2"]);
    assert!(json(&timed).get("timing").is_some());
}

#[test]
fn csv_and_text_output() {
    let (code, out, _) = sl2bc(&["verify", "--suite", "sl2", "--format", "csv", "--deterministic"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("name,expected,got,provenance,status,witness"));
    assert!(lines.all(|l| l.contains(",pass,")));
    let (_, out, _) = sl2bc(&["series", "--kind", "G", "--h0", "3", "--order", "2", "--format", "text"]);
    assert_eq!(out, "0  1\n1  -1/3\n2  1/24\n");
}

#[test]
fn run_in_process_matches_binary() {
    let args = ["sl2bc", "series", "--kind", "F", "--h0", "5"];
    let o = sl2bc::run(args);
    let (code, out, _) = sl2bc(&args[1..]);
    assert_eq!((o.code, o.stdout), (code, out));
}

#[test]
fn printer_examples() {
    let f = parse_field_expr("x1^2 + 2*r^2", 3, rat(-1, 4)).unwrap();
    assert_eq!(f.to_string(), "x1^2 + 2*r^2");
    assert!(parse_field_expr("0", 3, rat(0, 1)).unwrap().is_zero());
    let g = parse_field_expr("(x1 + r)^2 - 2*r*x1", 2, rat(0, 1)).unwrap();
    assert_eq!(g.to_string(), "x1^2 + r^2");
    assert!(parse_field_expr("x0", 2, rat(0, 1)).is_err());
    assert!(parse_field_expr("x1 +", 2, rat(0, 1)).is_err());
    assert!(parse_field_expr("1.5*x1", 2, rat(0, 1)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_print_round_trip(seed in any::<u64>(), n in 1usize..=4, logs in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = rat(seed as i64 % 7, 2);
        let mut f = random_field(&mut rng, &SampleShape::new(n), w.clone());
        if logs {
            let g = random_field(&mut rng, &SampleShape::new(n), w.clone());
            f = f.add(&g.mul_logr());
        }
        let text = f.to_string();
        let back = parse_field_expr(&text, n, w).unwrap();
        prop_assert_eq!(&back, &f, "{}", text);
        prop_assert_eq!(back.to_string(), text);
    }
}
