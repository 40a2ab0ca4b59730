//! Golden-file tests for every subcommand. Run with `UPDATE_GOLDEN=1` to
//! rewrite the expected outputs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

fn fixture(name: &str) -> String {
    dir("fixtures").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multinorm"))
        .args(args)
        .env_remove("MULTINORM_ORDER_CAP")
        .env_remove("MULTINORM_RANK_CAP")
        .env_remove("MULTINORM_DEGREE_CAP")
        .output()
        .expect("binary runs")
}

fn check(name: &str, args: &[&str], code: i32) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    let path = dir("golden").join(name);
    let got = String::from_utf8(out.stdout).unwrap();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(got, want, "{name} differs from its golden file");
}

#[test]
fn group() {
    check("group_s4.json", &["group", "--group", "S4"], 0);
    check("group_perm_file.txt", &["group", "--group", &fixture("s3.json"), "--format", "text"], 0);
}

#[test]
fn cohomology() {
    check("cohomology_v4_3.json", &["cohomology", "--group", "V4", "--degree", "3"], 0);
    check("cohomology_s3_perm.json", &["cohomology", "--group", "S3", "--degree", "-2", "--module", "perm:1"], 0);
}

#[test]
fn transfer() {
    check("transfer_res.json", &["transfer", "--kind", "res", "--group", "D4", "--subgroup", "1", "--degree", "2"], 0);
    check("transfer_inf.json", &["transfer", "--kind", "inf", "--group", "V4", "--subgroup", "1", "--degree", "2"], 0);
    check("transfer_def.json", &["transfer", "--kind", "def", "--group", "V4", "--subgroup", "1", "--degree", "-2"], 0);
    check("transfer_rsd.json", &["transfer", "--kind", "rsd", "--group", "C2xC4", "--subgroup", "1", "--degree", "-3"], 0);
    check("transfer_cor0.json", &["transfer", "--kind", "cor0", "--group", "S3", "--subgroup", "1", "--degree", "0"], 0);
}

#[test]
fn pairing() {
    check("pairing_v4_3.json", &["pairing", "--group", "V4", "--degree", "3"], 0);
}

#[test]
fn adjointness() {
    check("adjointness_c2_c2.json", &["adjointness", "--g1", "C2", "--g2", "C2", "--degree", "3"], 0);
}

#[test]
fn sha() {
    check("sha_v4.json", &["sha", "--config", &fixture("v4_13_17.json")], 0);
}

#[test]
fn multinorm() {
    check("multinorm_v4_v4.json", &["multinorm", "--g1", "V4", "--g2", "V4"], 0);
    check(
        "multinorm_v4_v4_config.json",
        &["multinorm", "--g1", "V4", "--g2", "V4", "--config", &fixture("v4xv4_13_17_5_29.json")],
        0,
    );
}

#[test]
fn hilbert() {
    check("hilbert_inf.json", &["hilbert", "-1", "-1", "inf"], 0);
    check("hilbert_2.txt", &["hilbert", "3/5", "-7", "2", "--format", "text"], 0);
}

#[test]
fn biquadratic() {
    check("biquadratic_13_17.json", &["biquadratic", "13", "17"], 0);
}

#[test]
fn example2() {
    check("example2.json", &["example2"], 0);
}

#[test]
fn usage_and_input_errors_exit_one() {
    for args in [
        vec!["frobnicate"],
        vec!["cohomology", "--group", "V4"],
        vec!["cohomology", "--group", "Z9", "--degree", "1"],
        vec!["cohomology", "--group", "V4", "--degree", "9"],
        vec!["transfer", "--kind", "def", "--group", "V4", "--subgroup", "1", "--degree", "2"],
        vec!["hilbert", "0", "3", "5"],
        vec!["hilbert", "2", "3", "p=4"],
        vec!["biquadratic", "2", "8"],
        vec!["multinorm", "--g1", "V4", "--g2", "C2", "--config", "/nonexistent.json"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn config_for_another_group_is_rejected() {
    let out = run(&["multinorm", "--g1", "V4", "--g2", "C2", "--config", &fixture("v4xv4_13_17_5_29.json")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn caps_come_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_multinorm"))
        .args(["cohomology", "--group", "C4", "--degree", "2"])
        .env("MULTINORM_ORDER_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn identical_runs_are_byte_identical() {
    for args in [vec!["example2", "--seed", "99"], vec!["multinorm", "--g1", "V4", "--g2", "C2"], vec!["group", "--group", "A4"]] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    assert_ne!(run(&["example2", "--seed", "1"]).stdout, run(&["example2", "--seed", "2"]).stdout);
}

#[test]
fn out_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("multinorm-out-{}.json", std::process::id()));
    let out = run(&["hilbert", "2", "3", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    std::fs::remove_file(path).unwrap();
}
