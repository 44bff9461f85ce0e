use serde_json::Value;
use spectra_cli::{run_with, SCHEMA_VERSION};

fn run_env(args: &[&str], env: Option<&str>) -> (i32, String) {
    let mut argv = vec!["spectra".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let code = run_with(argv, env, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn run(args: &[&str]) -> (i32, String) {
    run_env(args, None)
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let (code, text) = run(&a);
    (code, serde_json::from_str(&text).unwrap_or(Value::Null))
}

#[test]
fn verdict_json_for_first_example() {
    let (code, v) = json(&["verdict", "--poly", "x^4 - x - 1"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["conclusion"], "DenseL0AndL0");
    let rules: Vec<&str> = r["rules_applied"].as_array().unwrap().iter().map(|x| x["rule"].as_str().unwrap()).collect();
    assert_eq!(rules, ["R3", "R5"]);
    assert!(r["q"]["lo"].is_string());
}

#[test]
fn count_golden_ratio() {
    assert_eq!(run(&["count", "--poly", "x^2 - x - 1", "--n", "2"]), (0, "7\n".to_string()));
    assert_eq!(run(&["count", "--beta", "1/2,0", "--n", "6"]), (0, "128\n".to_string()));
}

#[test]
fn examples_all_pass() {
    let (code, text) = run(&["examples"]);
    assert_eq!(code, 0, "{text}");
    assert!(text.ends_with("8/8 pass\n"));
    assert_eq!(text.matches("PASS").count(), 9);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verdict", "--poly", "x^4 - x^3 - x^2 - x + 1"]).0, 2);
    assert_eq!(run(&["verdict", "--poly", "x^2 - x - 1"]).0, 0);
    assert_eq!(run(&["verdict", "--poly", "x^2 - 5"]).0, 64);
    assert_eq!(run(&["verdict", "--poly", "x^^2"]).0, 64);
    assert_eq!(run(&["frobnicate"]).0, 64);
    assert_eq!(run(&["count", "--n", "2"]).0, 64);
    assert_eq!(run(&["verdict", "--poly", "x^2 - x - 1", "--format", "csv"]).0, 64);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn every_subcommand_has_schema_version() {
    let cases: &[&[&str]] = &[
        &["classify", "--poly", "x^2 - x - 1"],
        &["verdict", "--poly", "x^2 - x - 1"],
        &["spectrum", "--poly", "x^2 - x - 1", "--n", "6"],
        &["count", "--poly", "x^2 - x - 1", "--n", "4"],
        &["lambda-min", "--poly", "x^4 - x - 1", "--n", "6"],
        &["attractor", "--lambda", "0.4,0"],
        &["search", "--poly", "x^2 + 1"],
        &["examples"],
    ];
    for args in cases {
        let (code, v) = json(args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(v["schema_version"], SCHEMA_VERSION, "{args:?}");
        assert_eq!(v["command"], args[0]);
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verdict", "--poly", "x^11 - x^10 - x^9 + x^6 - x^4 + x^2 + 1", "--format", "json"][..],
        &["spectrum", "--poly", "x^4 - x - 1", "--n", "8", "--format", "csv"][..],
    ] {
        assert_eq!(run(args), run(args));
    }
}

#[test]
fn numbers_are_decimal_strings() {
    let (_, v) = json(&["spectrum", "--poly", "x^2 - x - 1", "--n", "8"]);
    let r = &v["result"];
    assert_eq!(r["count"], 143);
    assert_eq!(r["min_gap"], "0.61803398874989484820");
    assert_eq!(r["pigeonhole"], true);
    let (_, v) = json(&["lambda-min", "--poly", "x^4 - x - 1", "--n", "24", "--from", "22"]);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows[0]["value"].as_str().unwrap().starts_with("0.000467419520"));
}

#[test]
fn root_selection_flags() {
    let (code, v) = json(&["classify", "--poly", "x^4 - x - 1", "--root-interval", "1,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["anti_pisot"], true);
    assert_eq!(run(&["classify", "--poly", "x^4 - x - 1", "--root-interval", "3,4"]).0, 64);
    assert_eq!(run(&["verdict", "--poly", "x^4 - x - 1", "--root-index", "0"]).0, 64);
    assert_eq!(run(&["verdict", "--poly", "x^4 - x - 1", "--root-index", "1"]).0, 0);
}

#[test]
fn budget_from_environment_and_flag() {
    let args = ["verdict", "--poly", "x^4 - x - 1"];
    assert_eq!(run_env(&args, Some("2048")).0, 0);
    assert_eq!(run_env(&args, Some("lots")).0, 64);
    assert_eq!(run_env(&args, Some("16")).0, 64);
    let mut with_flag = args.to_vec();
    with_flag.extend(["--budget", "4096"]);
    assert_eq!(run_env(&with_flag, Some("lots")).0, 0);
}

#[test]
fn series_csv_and_crosscheck() {
    let (code, text) = run(&["count", "--poly", "x^2 - x - 1", "--n", "4", "--series", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,z_n,ratio_decimal");
    assert!(lines[3].starts_with("2,7,"));
    let (code, v) = json(&["verdict", "--poly", "x^2 - x - 1", "--crosscheck", "12"]);
    assert_eq!(code, 0);
    assert!(v["result"]["crosscheck"]["tensions"].as_array().unwrap().is_empty());
}

#[test]
fn files_are_written() {
    let dir = std::env::temp_dir().join(format!("spectra-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let ppm = dir.join("a.ppm");
    let report = dir.join("r.json");
    let (code, text) = run(&[
        "attractor", "--lambda", "0.3,0.5", "--pixels", "64", "--raster-depth", "14",
        "--ppm", ppm.to_str().unwrap(), "--format", "json", "--output", report.to_str().unwrap(),
    ]);
    assert_eq!((code, text.as_str()), (0, ""));
    let bytes = std::fs::read(&ppm).unwrap();
    assert!(bytes.starts_with(b"P5\n64 64\n255\n"));
    assert_eq!(bytes.len(), 13 + 64 * 64);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(v["result"]["raster"]["marked"].as_u64().unwrap() > 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn search_reports_witness() {
    let (code, text) = run(&["search", "--poly", "x^3 + 2x^2 + 2x + 1"]);
    assert_eq!(code, 0);
    assert!(text.contains("status: Found"));
    assert!(text.contains("witness: -x^4 - x^3 + x + 1"));
}
