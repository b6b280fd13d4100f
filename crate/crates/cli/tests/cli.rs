//! End-to-end checks of the binary: output, verdicts and exit codes.

use std::process::Command;

fn stform(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_stform"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).to_string(),
        String::from_utf8_lossy(&out.stderr).to_string(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn classify_builtin_g2_form() {
    let (stdout, _, code) = stform(&["classify", "--form", "builtin:phi0"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("label: G2"));
    assert!(stdout.contains("stabilizer dimension: 14"));
}

#[test]
fn classify_json_report_shape() {
    let (stdout, _, code) = stform(&["classify", "--form", "builtin:rho+", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid json");
    assert_eq!(v["label"], "SL3R");
    assert_eq!(v["stable"], true);
    assert_eq!(v["stab_dim"], 16);
    assert!(v["certificates"]["hitchin_map"].is_array());
}

#[test]
fn witness_verdict_and_exit_codes() {
    let (stdout, _, code) = stform(&["ample", "witness", "--case", "timelike"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("coefficients (1/3, 1/3, 1/3)"));
    assert!(stdout.contains("verdict: pass"));

    // eps = 0 is rejected as input
    let (_, stderr, code) = stform(&["ample", "witness", "--case", "null", "--eps", "0"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error"));
}

#[test]
fn membership_failure_exits_one() {
    let (_, _, code) = stform(&[
        "ample",
        "check",
        "--family",
        "g2tilde",
        "--tau",
        "builtin:rho0",
        "--nu",
        "builtin:omega+",
        "--k",
        "3",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn malformed_form_file_exits_two() {
    let dir = std::env::temp_dir().join("stform-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.form");
    std::fs::write(&path, "{\"n\": 4").unwrap();
    let (_, stderr, code) = stform(&["classify", "--form", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error"));
}

#[test]
fn form_file_round_trip_through_cli() {
    let dir = std::env::temp_dir().join("stform-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("omega1.form");
    std::fs::write(
        &path,
        r#"{"n": 6, "p": 2, "field": "Q", "terms": [
            {"idx": [1, 4], "coeff": "2"},
            {"idx": [2, 5], "coeff": "-1"},
            {"idx": [3, 6], "coeff": "-1"}]}"#,
    )
    .unwrap();
    let (stdout, _, code) = stform(&[
        "ample",
        "check",
        "--family",
        "g2tilde",
        "--tau",
        "builtin:rho+",
        "--nu",
        path.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(code, 0, "stderr report: {stdout}");
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["member"], true);
    assert_eq!(v["characterization"], true);
}

#[test]
fn survey_table_brackets_by_causal_type() {
    let (stdout, _, code) = stform(&[
        "survey",
        "--form",
        "builtin:svphi0",
        "--metric",
        "split",
        "--count",
        "12",
        "--seed",
        "3",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("SL3C") || stdout.contains("SL3R"));
}

#[test]
fn hodge_commands_on_a_written_complex() {
    let dir = std::env::temp_dir().join("stform-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("triangle.json");
    std::fs::write(
        &path,
        r#"{"vertices": 3, "simplices": [[0, 1, 2]], "coords": [[0, 0], [1, 0], [0, 1]]}"#,
    )
    .unwrap();
    let (stdout, _, code) = stform(&["hodge", "split", "--complex", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("splitting verified"));
    let (stdout, _, code) = stform(&[
        "hodge",
        "whitney",
        "--complex",
        path.to_str().unwrap(),
        "--check",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("Kronecker pairing exact"));
}

#[test]
fn hitchin_vol_prints_exact_fraction() {
    let (stdout, _, code) = stform(&["hitchin", "vol", "--form", "builtin:svphi1"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("1/8"));
}
