//! Command-line behaviour: worked examples, exit codes, config and formats.

use std::process::{Command, Output};

use serde_json::Value;

use super::BIN;

fn burgess(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("spawn burgess")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

fn first(doc: &Value) -> &Value {
    &doc["reports"][0]
}

#[test]
fn quadratic_character_sum_over_a_full_period_is_zero() {
    let out = burgess(&["charsum", "--q", "5", "--char-index", "2", "--M", "0", "--N", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let row = first(&doc);
    assert_eq!(row["params"]["exact_zero"], true);
    assert_eq!(row["params"]["order"], 2);
    assert_eq!(row["status"], "pass");
}

#[test]
fn short_sum_of_the_quartic_character() {
    // chi(1) + chi(2) with chi(2) = i for the quartic character indexed 1
    let doc = json(&burgess(&["charsum", "--q", "5", "--char-index", "1", "--N", "2"]));
    let p = &first(&doc)["params"];
    assert!((p["re"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((p["im"].as_f64().unwrap().abs() - 1.0).abs() < 1e-12);
    assert_eq!(p["order"], 4);
}

#[test]
fn negative_start_is_accepted() {
    let out = burgess(&["charsum", "--q", "7", "--char-index", "1", "--M", "-10", "--N", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(first(&json(&out))["params"]["exact_zero"], true);
}

#[test]
fn astronomical_modulus_is_applicable() {
    let out = burgess(&["bound", "--log10-q", "3000", "--r", "3", "--theta", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let row = first(&doc);
    assert_eq!(row["status"], "pass");
    assert_eq!(row["mode"], "surrogate");
    assert_eq!(row["params"]["applicable"], true);
    let log10 = row["params"]["log10_bound"].as_f64().unwrap();
    assert!(log10 > 1500.0 && log10 < 3000.0, "{log10}");
}

#[test]
fn small_modulus_is_flagged_not_failed() {
    let out = burgess(&["bound", "--q", "1000003", "--r", "2", "--N", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let row = first(&doc);
    assert_eq!(row["status"], "inconclusive");
    assert_eq!(row["mode"], "exact");
    assert!(row["params"]["reasons"].as_str().unwrap().contains("10^1145"));
}

#[test]
fn non_cubefree_modulus_with_r_three_is_noted() {
    let doc = json(&burgess(&["bound", "--q", "24", "--r", "3", "--variant", "thm1"]));
    let reasons = first(&doc)["params"]["reasons"].as_str().unwrap().to_string();
    assert!(reasons.contains("not cubefree"), "{reasons}");
}

#[test]
fn envelope_and_summary() {
    let doc = json(&burgess(&["table1"]));
    assert_eq!(doc["tool"], "burgess");
    assert_eq!(doc["subcommand"], "table1");
    assert_eq!(doc["seed"], 1);
    assert_eq!(doc["summary"]["total"], 9);
    assert_eq!(doc["summary"]["pass"], 9);
    let row = first(&doc);
    for key in ["claim_id", "module", "params", "status", "margin_lo", "margin_hi", "mode", "runtime_ms", "seed", "method", "notes"] {
        assert!(row.get(key).is_some(), "missing {key}");
    }
    assert!(row["runtime_ms"].is_null());
}

#[test]
fn timings_fill_runtime() {
    let doc = json(&burgess(&["table1", "--timings"]));
    assert!(first(&doc)["runtime_ms"].is_u64());
}

#[test]
fn failing_sweep_exits_one() {
    // q = 1 breaks the moment inequality at B = 5
    let out = burgess(&["verify-weil", "--q-min", "1", "--q-max", "1", "--r", "2", "--B", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["summary"]["fail"], 1);
    let out = burgess(&["verify-weil", "--q-min", "2", "--q-max", "40", "--r", "2", "--B", "2,3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["table1", "--workers", "0"],
        &["bound", "--q", "7", "--r", "2", "--variant", "thm3"],
        &["bound", "--q", "7", "--log10-q", "3", "--r", "2"],
        &["bound", "--log10-q", "1e3x", "--r", "2"],
        &["charsum", "--q", "5", "--char-index", "9", "--N", "3"],
        &["table1", "--config", "/nonexistent/burgess.json"],
    ] {
        let out = burgess(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn config_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"q": 5, "char-index": 2, "N": 5, "seed": 9}"#).unwrap();
    let cfg = cfg.to_str().unwrap();

    let doc = json(&burgess(&["charsum", "--config", cfg]));
    assert_eq!(doc["seed"], 9);
    assert_eq!(first(&doc)["params"]["N"], 5);

    let doc = json(&burgess(&["charsum", "--config", cfg, "--N", "2", "--seed", "3"]));
    assert_eq!(doc["seed"], 3);
    assert_eq!(first(&doc)["params"]["N"], 2);
    assert_eq!(doc["config"]["n"], 2);
}

#[test]
fn csv_has_flattened_params() {
    let out = burgess(&["table1", "--format", "csv"]);
    let mut rdr = csv::Reader::from_reader(&out.stdout[..]);
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(&headers[0], "claim_id");
    assert!(headers.iter().any(|h| h == "param.C"));
    assert_eq!(headers.iter().next_back(), Some("notes"));
    let rows: Vec<_> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 9);
    let r_col = headers.iter().position(|h| h == "param.r").unwrap();
    assert_eq!(&rows[0][r_col], "2");
}

#[test]
fn text_ends_with_totals() {
    let out = burgess(&["certify", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("burgess certify"));
    assert!(text.trim_end().lines().last().unwrap().starts_with("total 10:"));
    assert!(text.contains("L55"));
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let out = burgess(&["table1", "--output", path.to_str().unwrap()]);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), burgess(&["table1"]).stdout);
}

#[test]
fn seed_changes_sampled_instances() {
    let a = json(&burgess(&[
        "verify-lemmas",
        "--sq-q-max",
        "10",
        "--sq-q-max-r3",
        "10",
        "--complete-trials",
        "20",
        "--n-max",
        "100",
        "--va-trials",
        "20",
        "--seed",
        "1",
    ]));
    let b = json(&burgess(&[
        "verify-lemmas",
        "--sq-q-max",
        "10",
        "--sq-q-max-r3",
        "10",
        "--complete-trials",
        "20",
        "--n-max",
        "100",
        "--va-trials",
        "20",
        "--seed",
        "2",
    ]));
    let pick = |d: &Value| {
        d["reports"].as_array().unwrap().iter().find(|r| r["claim_id"] == "complete_sum_bound").unwrap()["params"]["worst_instance"].clone()
    };
    assert_eq!(a["summary"]["fail"], 0);
    assert_ne!(pick(&a), pick(&b));
}
