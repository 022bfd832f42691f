use std::process::{Command, Output};

use serde_json::Value;

fn fourfold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fourfold"))
        .args(args)
        .env_remove("FOURFOLD_PERSSON_REGION")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = fourfold(&full);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn invariants_k3_and_godeaux() {
    let v = json(&["invariants", "--c1sq", "0", "--chi", "2"]);
    assert_eq!(v["result"]["char"]["e"], 24);
    assert_eq!(v["result"]["char"]["sigma"], -16);
    assert_eq!(v["result"]["hitchin_thorpe"]["equality"], true);

    let v = json(&["invariants", "--e", "11", "--sigma", "-7"]);
    assert_eq!(v["result"]["chern"]["c1sq"], 1);
    assert_eq!(v["result"]["chern"]["chi"], 1);
}

#[test]
fn invariants_errors_go_to_stderr() {
    let out = fourfold(&["invariants", "--e", "3", "--sigma", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not divisible by 4"));

    let out = fourfold(&["invariants", "--e", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("underdetermined"));
}

#[test]
fn pair_text_and_errors() {
    let out = fourfold(&["pair", "--i", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("margin_line: 39 > 38"));
    assert!(text.contains("caveats:"));

    assert!(json(&["pair", "--i", "0"])["result"]["verified"]
        .as_bool()
        .unwrap());

    let out = fourfold(&["pair", "--i", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());

    let out = fourfold(&["pair", "--i", "2", "--i-min", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn horikawa_reports_branch_discrepancy() {
    let v = json(&["horikawa", "--i", "3"]);
    assert_eq!(v["result"]["record"]["chern"]["c1sq"], 10);
    assert_eq!(v["result"]["record"]["chern"]["chi"], 8);
    assert_eq!(v["result"]["record"]["spin"], false);
    assert_eq!(v["result"]["ampleness"]["branch_ample"], false);
    assert_eq!(v["result"]["ampleness"]["canonical_pushdown_ample"], true);
    assert_eq!(v["caveats"].as_array().unwrap().len(), 1);
}

#[test]
fn obstruct_pre_blowup_persson_surface() {
    let v = json(&[
        "obstruct", "--e", "53", "--sigma", "-29", "--k", "13", "--b2plus", "11",
    ]);
    assert_eq!(v["result"]["certificate"]["conclusion"], "obstructed");
    assert_eq!(v["result"]["certificate"]["x_char"]["e"], 66);
    assert_eq!(v["result"]["certificate"]["einstein_bound"], "19/3");

    let v = json(&["obstruct", "--e", "53", "--sigma", "-29", "--k", "12"]);
    assert_eq!(v["result"]["certificate"]["conclusion"], "not_obstructed");

    let out = fourfold(&[
        "obstruct", "--e", "53", "--sigma", "-29", "--k", "13", "--no-sw",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn homeo_and_godeaux() {
    assert_eq!(
        json(&["homeo", "1,8,odd", "1,8,odd"])["result"]["homeomorphic"],
        true
    );
    assert_eq!(
        json(&["homeo", "3,19,even", "19,3,even"])["result"]["homeomorphic"],
        false
    );
    let out = fourfold(&["homeo", "1,7,even", "1,7,odd"]);
    assert_eq!(out.status.code(), Some(1));

    let v = json(&["godeaux"]);
    assert_eq!(v["result"]["homeomorphic"], true);
    assert_eq!(v["result"]["hitchin_thorpe_margin"], 1);
}

#[test]
fn scan_contains_first_horikawa_point() {
    let out = fourfold(&[
        "scan",
        "--chi-min",
        "5",
        "--chi-max",
        "5",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text
        .lines()
        .any(|l| l == "chi,c1sq_z,c1sq_y,k,e,sigma,ht_margin,obstruction_margin"));
    assert!(text.lines().any(|l| l == "5,4,13,9,56,-36,4,1"));
}

#[test]
fn scan_csv_and_json_agree() {
    let csv_out = fourfold(&[
        "scan",
        "--chi-min",
        "2",
        "--chi-max",
        "30",
        "--format",
        "csv",
    ]);
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(csv_out.stdout.as_slice());
    let mut csv_rows: Vec<Vec<i64>> = reader
        .records()
        .map(|r| r.unwrap().iter().map(|f| f.parse().unwrap()).collect())
        .collect();

    let v = json(&["scan", "--chi-min", "2", "--chi-max", "30"]);
    let columns = [
        "chi",
        "c1sq_z",
        "c1sq_y",
        "k",
        "e",
        "sigma",
        "ht_margin",
        "obstruction_margin",
    ];
    let mut json_rows: Vec<Vec<i64>> = v["result"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| columns.iter().map(|c| r[*c].as_i64().unwrap()).collect())
        .collect();
    csv_rows.sort();
    json_rows.sort();
    assert_eq!(csv_rows, json_rows);
    assert_eq!(v["result"]["count"], json_rows.len());
}

#[test]
fn scan_empty_and_invalid() {
    let out = fourfold(&[
        "scan",
        "--chi-min",
        "1",
        "--chi-max",
        "1",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let data_lines = stdout(&out).lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(data_lines, 1);

    let out = fourfold(&["scan", "--chi-min", "4", "--chi-max", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn region_env_override() {
    let run = |region: &str| {
        Command::new(env!("CARGO_BIN_EXE_fourfold"))
            .args([
                "scan",
                "--chi-min",
                "10",
                "--chi-max",
                "10",
                "--format",
                "json",
            ])
            .env("FOURFOLD_PERSSON_REGION", region)
            .output()
            .unwrap()
    };
    let my: Value = serde_json::from_slice(&run("noether-my").stdout).unwrap();
    let eight: Value = serde_json::from_slice(&run("noether-8chi").stdout).unwrap();
    assert!(eight["result"]["count"].as_u64() < my["result"]["count"].as_u64());
    assert_eq!(eight["inputs"]["region"], "noether-8chi");
    assert_eq!(run("bogus").status.code(), Some(2));
}

#[test]
fn json_output_round_trips_byte_for_byte() {
    for args in [
        vec!["pair", "--i", "7", "--format", "json"],
        vec![
            "invariants",
            "--b2plus",
            "3",
            "--b2minus",
            "19",
            "--parity",
            "even",
            "--format",
            "json",
        ],
        vec![
            "scan",
            "--chi-min",
            "3",
            "--chi-max",
            "8",
            "--format",
            "json",
        ],
    ] {
        let out = fourfold(&args);
        let text = stdout(&out);
        let parsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", text);
    }
}

#[test]
fn csv_only_for_scan() {
    let out = fourfold(&["horikawa", "--i", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}
