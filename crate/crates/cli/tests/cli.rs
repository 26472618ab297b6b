use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hall(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hall"));
    cmd.args(args).env_remove("HALL_MAX_ENUM");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn redacted(mut v: Value) -> String {
    for (_, t) in v["timings"].as_object_mut().unwrap() {
        *t = Value::from(0);
    }
    serde_json::to_string_pretty(&v).unwrap() + "\n"
}

/// Compares against `tests/golden/<name>`; `HALL_BLESS=1` rewrites it.
fn golden(name: &str, args: &[&str]) {
    let out = hall(args, &[]);
    let text = redacted(json(&out));
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("HALL_BLESS").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text, expected, "{name} drifted; rerun with HALL_BLESS=1 after review");
}

#[test]
fn golden_engine_report() {
    golden("check_psl2_41_235.json", &["check", "PSL+:2:41", "--pi", "2,3,5", "--json"]);
}

#[test]
fn golden_oracle_report() {
    golden("verify_psl2_7_37.json", &["verify", "PSL+:2:7", "--pi", "3,7", "--json"]);
}

#[test]
fn golden_pairs_report() {
    golden("pairs_alt5_235.json", &["pairs", "Alt:5", "--pi", "2,3,5", "--json"]);
}

#[test]
fn json_schema_fields() {
    let v = json(&hall(&["check", "Sym:8", "--pi", "2,3", "--json", "--oracle"], &[]));
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["consistency", "engine", "oracle", "pairs", "request", "schema_version", "timings"]);
    assert_eq!(v["consistency"], "Consistent");
    assert_eq!(v["engine"]["decision"], "Yes");
    assert_eq!(v["oracle"]["certificate"]["witness"]["order"], 1152);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&hall(&["check", "PSL+:2:41", "--pi", "2,3,5"], &[])), 0);
    assert_eq!(code(&hall(&["check", "PSL+:2:41", "--pi", "2,3"], &[])), 2);
    assert_eq!(code(&hall(&["check", "Spor:J1", "--pi", "2,3,7"], &[])), 0);
    assert_eq!(code(&hall(&["check", "PSL+:2:41", "--pi", "2,x"], &[])), 1);
    assert_eq!(code(&hall(&["check", "PSL:2:41", "--pi", "2,3"], &[])), 1);
    assert_eq!(code(&hall(&["verify", "PSp:2:3", "--pi", "2,3"], &[])), 1);
    assert_eq!(code(&hall(&["verify", "PSL+:2:41", "--pi", "2,3,5", "--budget-ms", "1"], &[])), 2);
    assert_eq!(code(&hall(&["pairs", "Alt:5", "--pi", "2,7"], &[])), 1);
    assert_eq!(code(&hall(&["bogus"], &[])), 1);
}

#[test]
fn every_printed_verdict_cites_a_source() {
    let out = hall(&["check", "PSL+:2:41", "--pi", "2,5"], &[]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[R5]"));
    assert!(text.contains("Revin–Vdovin 2006"));
}

#[test]
fn enumeration_cap_from_env_and_flag() {
    let args = ["verify", "PSL+:2:41", "--pi", "2,5"];
    let capped = hall(&args, &[("HALL_MAX_ENUM", "1000")]);
    assert_eq!(code(&capped), 1);
    assert!(String::from_utf8_lossy(&capped.stderr).contains("1000"));
    let flagged = [&args[..], &["--max-enum", "200000"]].concat();
    assert_eq!(code(&hall(&flagged, &[("HALL_MAX_ENUM", "1000")])), 0);
}

#[test]
fn config_file_sets_caps() {
    let path = std::env::temp_dir().join(format!("hall-config-{}.conf", std::process::id()));
    std::fs::write(&path, "# caps\nmax_enum = 1000\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(code(&hall(&["verify", "PSL+:2:41", "--pi", "2,5", "--config", p], &[])), 1);
    assert_eq!(code(&hall(&["verify", "PSL+:2:41", "--pi", "2,5", "--config", p, "--max-enum", "200000"], &[])), 0);
    std::fs::write(&path, "max_enum 5\n").unwrap();
    assert_eq!(code(&hall(&["check", "Alt:5", "--pi", "2", "--config", p], &[])), 1);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn crosscheck_formats() {
    let out = hall(&["crosscheck", "--family", "Sym", "--n", "5..6", "--pi-size", "2", "--format", "csv"], &[]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("group,sigma,engine"));
    assert_eq!(text.lines().count(), 7);
    let v = json(&hall(&["crosscheck", "--family", "Alt", "--n", "5", "--json"], &[]));
    assert_eq!(v["summary"]["mismatches"], 0);
    assert_eq!(code(&hall(&["crosscheck", "--family", "PSL2", "--n", "5..7"], &[])), 1);
}
