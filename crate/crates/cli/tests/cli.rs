use std::path::Path;
use std::process::{Command, Output};

use gradedim::arith::int;
use gradedim::{QSeries, WronskianResult};
use serde_json::Value;

fn gradedim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gradedim"))
        .args(args)
        .env_remove("GRADEDIM_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn gradedim_cached(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gradedim"))
        .args(args)
        .env("GRADEDIM_CACHE_DIR", dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn character_json_round_trips() {
    let out = gradedim(&["char", "affine", "--level", "1", "--index", "1", "--terms", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
    assert_eq!(v["family"], "affine");
    assert_eq!(v["c"], "1");
    assert_eq!(v["h"], "0");
    let series: QSeries = serde_json::from_value(v).unwrap();
    // ch_{1,1} = q^{-1/24}(1 + 3q + 4q^2 + 7q^3 + 13q^4 + ...)
    assert_eq!(series.lattice_den(), 24);
    assert_eq!(series.coeff_num(-1), int(1));
    assert_eq!(series.coeff_num(23), int(3));
    assert_eq!(series.coeff_num(95), int(13));
}

#[test]
fn level_six_vanishes() {
    let out = gradedim(&["fv", "affine", "--level", "6", "--terms", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["vanishes"], true);
    assert_eq!(v["F_normalized"], Value::Null);
    let plain = gradedim(&["fv", "affine", "--level", "6", "--terms", "20", "--format", "plain"]);
    assert!(stdout(&plain).contains("vanishes=true"));
}

#[test]
fn table_reproduces_g_column() {
    let out = gradedim(&["table", "--kmax", "11", "--terms", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let md = stdout(&out);
    for row in [
        "| 5 | 12 | 1 | 0 | 0 | `j - 1302528/1075` | 1211.653953 |",
        "| 6 | 14 | 0 | 2 | 1 | `0` | - |",
        "| 8 | 18 | 1 | 0 | 1 | `j - 8696400/20119` | 432.2481237 |",
        "| 9 | 20 | 1 | 2 | 0 | `j - 1381580800/1077687` | 1281.987070 |",
        "| 11 | 24 | 2 | 0 | 0 | `j^2 - 20462710947840/13928908741 j + 1908473415598080/13928908741` | 100.0843759, 1368.997756 |",
    ] {
        assert!(md.contains(row), "missing row {row}\n{md}");
    }
    assert_eq!(md.lines().count(), 13);
}

#[test]
fn cache_hits_match_cold_runs() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["fv", "affine", "--level", "5", "--decompose", "--zeros", "--terms", "25"];
    let cold = gradedim(&args);
    let first = gradedim_cached(&args, dir.path());
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let hit = gradedim_cached(&args, dir.path());
    assert_eq!(cold.stdout, first.stdout);
    assert_eq!(cold.stdout, hit.stdout);
    let w_cold = gradedim(&["wronskian", "affine", "--level", "5", "--terms", "25"]);
    let w_hit = gradedim_cached(&["wronskian", "affine", "--level", "5", "--terms", "25"], dir.path());
    assert_eq!(w_cold.stdout, w_hit.stdout);
}

#[test]
fn wronskian_json_parses_back() {
    let out = gradedim(&["wronskian", "affine", "--level", "3", "--verify-eta", "--terms", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let mut v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["eta_check"]["holds"], true);
    assert_eq!(v["eta_check"]["exponent"], 24);
    v.as_object_mut().unwrap().remove("eta_check");
    let res: WronskianResult = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&res).unwrap(), v);
    assert_eq!(res.f_weight, 8);
}

#[test]
fn identities_and_congruences_pass() {
    for args in [
        &["identity", "affine", "--i", "2", "--terms", "20"][..],
        &["identity", "virasoro", "--pt", "2", "--ppt", "1", "--terms", "20"][..],
        &["identity", "jacobi", "--i", "3", "--terms", "40"][..],
        &["congruence", "--level", "2", "--hasse", "--terms", "20"][..],
    ] {
        let out = gradedim(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = gradedim(&["congruence", "--level", "5", "--terms", "15"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["p"], 13);
    let reports = v["reports"].as_array().unwrap();
    assert!(reports.iter().all(|r| r["holds"] == true && r["kind"] == "assertion"));
}

#[test]
fn exit_codes_separate_usage_from_failure() {
    let bad_index = gradedim(&["char", "affine", "--level", "1", "--index", "3"]);
    assert_eq!(bad_index.status.code(), Some(2));
    let not_prime = gradedim(&["congruence", "--level", "3"]);
    assert_eq!(not_prime.status.code(), Some(2));
    let bad_flag = gradedim(&["table", "--bogus"]);
    assert_eq!(bad_flag.status.code(), Some(2));
    let zero_terms = gradedim(&["char", "affine", "--level", "1", "--index", "1", "--terms", "0"]);
    assert_eq!(zero_terms.status.code(), Some(2));
    let coprime = gradedim(&["fv", "virasoro", "--p", "2", "--pp", "4"]);
    assert_eq!(coprime.status.code(), Some(2));
}

#[test]
fn suite_prints_one_line_per_criterion() {
    let out = gradedim(&["suite", "--criterion", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("PASS criterion 8:"), "{text}");
}
