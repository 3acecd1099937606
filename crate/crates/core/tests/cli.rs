//! End-to-end tests of the `ouq` binary: exit codes, output formats, the
//! coefficient cache, and payload determinism.

use std::process::{Command, Output};

fn ouq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ouq"))
        .args(args)
        .output()
        .expect("spawn ouq")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn usage_error_exits_2() {
    let out = ouq(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ouq(&["coeffs", "ou"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ouq(&["coeffs", "nosuch", "direct", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_family_form_combination_exits_2() {
    let out = ouq(&["coeffs", "ou", "appell", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ouq(&["coeffs", "oustar", "ramanujan", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn coeffs_anchors() {
    let out = ouq(&["--no-header", "coeffs", "ou", "direct", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0 0\n1 1\n2 2\n3 4\n4 6\n");

    let out = ouq(&["--no-header", "--format", "csv", "coeffs", "oustar", "direct", "4", "--ranks"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("n,m,count\n"));
    assert!(text.contains("4,-1,1\n") && text.contains("4,1,1\n"));

    // order zero: success with no nonzero content
    let out = ouq(&["--no-header", "coeffs", "ou", "hecke", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0 0\n");
}

#[test]
fn header_carries_metadata_and_is_suppressible() {
    let with = stdout(&ouq(&["coeffs", "ou", "direct", "2"]));
    assert!(with.starts_with("# ouq v"));
    let without = stdout(&ouq(&["--no-header", "coeffs", "ou", "direct", "2"]));
    assert!(!without.starts_with("#"));
    assert_eq!(with.lines().count(), without.lines().count() + 1);
}

#[test]
fn json_payload_parses_and_is_deterministic() {
    let args = ["--no-header", "--format", "json", "coeffs", "oustar", "hecke2", "25", "--ranks"];
    let a = ouq(&args);
    let b = ouq(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["family"], "oustar");
    assert_eq!(v["counts"][4], "2");
}

#[test]
fn verify_exit_codes() {
    let out = ouq(&["--no-header", "verify", "identities", "25"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = ouq(&["--no-header", "verify", "parity", "400"]);
    assert_eq!(out.status.code(), Some(0));
    let out = ouq(&["--no-header", "verify", "nosuchsuite"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_mod_50_and_honest_mod_4() {
    let out = ouq(&["--no-header", "--format", "csv", "scan", "50", "2000"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("37,")), "{text}");
    assert!(text.lines().any(|l| l.starts_with("47,")), "{text}");

    // small horizon: witness counts must reflect the table actually checked
    let out = ouq(&["--no-header", "--format", "csv", "scan", "4", "100"]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout(&out).lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        let witnesses: usize = fields[1].parse().unwrap();
        assert!(witnesses <= 25, "more witnesses than class members: {line}");
    }

    let out = ouq(&["--no-header", "scan", "1", "100"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_lists_and_caps() {
    let out = ouq(&["--no-header", "enumerate", "oustar", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "[3] 1\n1 [3]\n");

    let out = ouq(&["--no-header", "--format", "json", "enumerate", "ou", "4"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 6);

    let out = ouq(&["--no-header", "enumerate", "ou", "64"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cache_round_trip_and_invalidation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let args = ["--no-header", "--cache-dir", path, "--format", "json", "coeffs", "ou", "ramanujan", "30"];
    let first = ouq(&args);
    assert_eq!(first.status.code(), Some(0));
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let cache_file = files[0].as_ref().unwrap().path();

    let second = ouq(&args);
    assert_eq!(first.stdout, second.stdout);

    // corrupt the version header: the cache must be ignored and rewritten
    let text = std::fs::read_to_string(&cache_file).unwrap();
    std::fs::write(&cache_file, text.replace("\"engine_version\":\"", "\"engine_version\":\"stale-")).unwrap();
    let third = ouq(&args);
    assert_eq!(first.stdout, third.stdout);
}

#[test]
fn cache_dir_env_variable_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ouq"))
        .env("OUQ_CACHE_DIR", dir.path())
        .args(["--no-header", "coeffs", "ou", "direct", "10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn asymptotics_grid_report() {
    let out = ouq(&["--no-header", "--format", "json", "asymptotics", "--points", "100,200", "--t-grid", "0.3,0.1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 4);
    assert_eq!(v["grid"].as_array().unwrap().len(), 4);

    let out = ouq(&["--no-header", "asymptotics", "--points", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn jobs_flag_accepted() {
    let out = ouq(&["--no-header", "--jobs", "2", "verify", "decomposition"]);
    assert_eq!(out.status.code(), Some(0));
}
