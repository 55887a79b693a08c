use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qvlbi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qvlbi")).args(args).env_remove("QVLBI_SEED").output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = qvlbi(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qvlbi-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn qfi_vanishes_for_incoherent_source() {
    let v = json(&["qfi", "--epsilon", "1e-7", "--gamma", "0", "--phi", "0"]);
    assert_eq!(v["qfi"]["j_phi"], 0.0);
    assert_eq!(v["crb"]["phi"]["kind"], "unidentifiable");
}

#[test]
fn binary_search_example() {
    let v = json(&["protocol", "binary-search", "--bins", "4", "--photon-bin", "2"]);
    assert_eq!(v[0]["consumed"], 2);
    assert_eq!(v[0]["index"], 2);
}

#[test]
fn unary_consumes_one_pair_per_bin() {
    let v = json(&["protocol", "unary", "--bins", "300", "--epsilon", "0.01", "--shots", "4"]);
    for run in v.as_array().unwrap() {
        assert_eq!(run["consumed"], 300);
    }
}

#[test]
fn binary_codeword_for_fifth_bin() {
    let v = json(&["protocol", "binary", "--bins", "16", "--photon-bin", "5"]);
    assert_eq!(v[0]["codeword"], 5);
    assert_eq!(v[0]["bits"], "10100");
}

#[test]
fn consumption_table_csv() {
    let out = qvlbi(&["reproduce", "--table", "consumption"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let header = rows.headers().unwrap().clone();
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let records: Vec<_> = rows.records().map(|r| r.unwrap()).collect();
    assert_eq!(records.len(), 9);
    let flagged: Vec<(&str, &str)> = records
        .iter()
        .filter(|r| &r[col("discrepancy")] == "true")
        .map(|r| (&r[col("lambda_nm")], &r[col("epsilon")]))
        .collect();
    assert_eq!(flagged, vec![("555.0", "1e-11"), ("760.0", "1e-10")]);
    assert!(records.iter().all(|r| !r[col("provenance")].is_empty()));
}

#[test]
fn photometry_single_row() {
    let v = json(&["photometry", "--m-ab", "9", "--lambda-nm", "760", "--delta-lambda-nm", "1", "--area", "10"]);
    let rate = v["photon_rate"].as_f64().unwrap();
    assert!((rate - 181106.0).abs() / 181106.0 < 0.02);
    assert!(v.get("coherence_time_s").is_some());
}

#[test]
fn both_bandwidths_is_a_usage_error() {
    let out = qvlbi(&["photometry", "--delta-lambda-nm", "1", "--delta-nu-hz", "1e9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(qvlbi(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(qvlbi(&["qfi", "--unknown-flag"]).status.code(), Some(2));
    assert_eq!(qvlbi(&["qfi", "--epsilon", "-1"]).status.code(), Some(1));
    assert_eq!(qvlbi(&["precession", "--eccentricity", "1"]).status.code(), Some(1));
    assert_eq!(qvlbi(&["protocol", "binary-search", "--bins", "8", "--photon-bin", "9"]).status.code(), Some(1));
    assert_eq!(qvlbi(&["--version"]).status.code(), Some(0));
}

#[test]
fn version_carries_tag() {
    let out = qvlbi(&["--version"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("qvlbi ") && text.contains("acceptance"));
}

#[test]
fn numbers_have_twelve_significant_digits() {
    let out = qvlbi(&["cavity"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for token in text.split(|c: char| !(c.is_ascii_digit() || c == '.' || c == 'e' || c == '-')) {
        let mantissa = token.split('e').next().unwrap().replace(['.', '-'], "");
        let digits = mantissa.trim_start_matches('0');
        assert!(digits.len() <= 12, "{token}");
    }
}

#[test]
fn seed_from_environment_and_flag() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_qvlbi"));
        cmd.args(["geodesy", "mc", "--photons", "200", "--shots", "5"]).args(extra);
        match env {
            Some(v) => cmd.env("QVLBI_SEED", v),
            None => cmd.env_remove("QVLBI_SEED"),
        };
        serde_json::from_slice::<Value>(&cmd.output().unwrap().stdout).unwrap()
    };
    assert_eq!(run(Some("41"), &[])["seed"], 41);
    assert_eq!(run(Some("41"), &["--seed", "42"])["seed"], 42);
    assert_eq!(run(None, &[])["seed"], qvlbi_core::rng::DEFAULT_SEED);
    assert_eq!(run(Some("41"), &[])["mean"], run(None, &["--seed", "41"])["mean"]);
}

#[test]
fn config_file_preloads_and_flags_override() {
    let dir = scratch("config");
    let file = dir.join("run.cfg");
    std::fs::write(&file, "# geodesy run\nphotons = 300\nshots = 6\n").unwrap();
    let path = file.to_str().unwrap();
    let v = json(&["--config", path, "geodesy", "mc"]);
    assert_eq!((v["photons"].as_u64(), v["shots"].as_u64()), (Some(300), Some(6)));
    let v = json(&["--config", path, "geodesy", "mc", "--shots", "9"]);
    assert_eq!((v["photons"].as_u64(), v["shots"].as_u64()), (Some(300), Some(9)));
    std::fs::write(&file, "not-a-flag = 1\n").unwrap();
    assert_eq!(qvlbi(&["--config", path, "cavity"]).status.code(), Some(2));
}

#[test]
fn stirap_emits_csv_trajectory() {
    let out = qvlbi(&["stirap", "--steps", "20000", "--record-every", "1000"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,p_0r,p_e,p_1r"));
    assert_eq!(lines.count(), 21);
}

#[test]
fn reproduce_all_writes_manifest() {
    let dir = scratch("reproduce");
    let out = qvlbi(&["reproduce", "--all", "--out-dir", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    let entries = manifest.as_array().unwrap();
    assert_eq!(entries.len(), 5);
    for e in entries {
        assert_eq!(e["pass"], true);
        assert!(dir.join(e["file"].as_str().unwrap()).exists());
        assert!(!e["provenance"].as_str().unwrap().is_empty());
    }
}

#[test]
fn output_file_flag() {
    let dir = scratch("out");
    let file = dir.join("targets.csv");
    let out = qvlbi(&["targets", "--table", "exoplanets", "--format", "csv", "--out", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(file).unwrap();
    assert_eq!(text.lines().count(), 6);
}
