use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_fock-toeplitz");
const MODULUS_SQ: &str = r#"{"kind":"radial_monomial","m":1}"#;

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("FOCK_TOEPLITZ_TOL")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn re(v: &Value) -> f64 {
    v["re"].as_f64().unwrap()
}

#[test]
fn gamma_of_constant() {
    let v = json(&run(&["gamma", "--symbol", r#"{"kind":"radial_monomial","m":0}"#, "-N", "4"]));
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 4);
    assert!(entries.iter().all(|e| re(&e["gamma"]) == 1.0));
}

#[test]
fn gamma_csv_and_quadrature() {
    let out = run(&["gamma", "--symbol", MODULUS_SQ, "-N", "3", "--method", "quadrature", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,re,im,abs_err,reliable");
    assert_eq!(lines.len(), 4);
    assert!(lines[3].starts_with("2,3.0000000000000000e0,"), "{}", lines[3]);
}

#[test]
fn classify_accepts_spaces() {
    let v = json(&run(&["classify", "--theta", "1.28 + 0.96i"]));
    assert_eq!(v["case"], "Case1");
    let v = json(&run(&["classify", "--theta", "3"]));
    assert_eq!(v["case"], "Case2");
    assert_eq!(v["margin"].as_f64(), Some(3.0));
    let v = json(&run(&["classify", "--theta", "0.5 - 0.1i"]));
    assert_eq!(v["case"], "NoneAsserted");
}

#[test]
fn compose_modulus_squared() {
    let v = json(&run(&["compose", "--phi", MODULUS_SQ, "--psi", MODULUS_SQ, "-N", "16"]));
    assert_eq!(v["hyp2"]["holds"], false);
    assert_eq!(v["hyp2"]["basis"], "prefix-based");
    for (n, e) in v["gamma_tau"]["entries"].as_array().unwrap().iter().enumerate() {
        assert_eq!(re(&e["gamma"]), ((n + 1) * (n + 1)) as f64);
    }
    let terms = v["tau"]["terms"].as_array().unwrap();
    let coeffs: Vec<(u64, u64, f64)> = terms
        .iter()
        .map(|t| (t["j"].as_u64().unwrap(), t["k"].as_u64().unwrap(), re(&t["c"])))
        .collect();
    assert_eq!(coeffs, vec![(1, 1, -1.0), (2, 2, 1.0)]);
    assert!(v["notes"].is_array());
}

#[test]
fn diamond_and_heat() {
    let v = json(&run(&["diamond", "--phi", MODULUS_SQ, "--psi", r#"{"kind":"poly","terms":[{"j":1,"k":0,"c":{"re":1,"im":0}}]}"#]));
    assert_eq!(v["terms"][0]["j"], 2);
    assert_eq!(v["terms"][0]["k"], 1);
    let out = run(&["heat", "--symbol", MODULUS_SQ, "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    let v = json(&run(&["heat", "--symbol", r#"{"kind":"radial_exponential","lambda":{"re":0.4,"im":0.8}}"#]));
    assert_eq!(v["kind"], "sum");
}

#[test]
fn wick_grid_and_matrix_and_spectrum() {
    let v = json(&run(&["wick", "--symbol", MODULUS_SQ, "--points", "5", "--r-max", "1"]));
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 5);
    let last = &pts[4];
    assert!((re(&last["value"]) - 2.0).abs() < 1e-12);

    let v = json(&run(&["matrix", "--symbol", MODULUS_SQ, "-N", "3"]));
    assert_eq!(v["dim"], 3);
    assert_eq!(re(&v["row_major"][4]), 2.0);

    let v = json(&run(&["spectrum", "--symbol", MODULUS_SQ, "-N", "5"]));
    assert_eq!(v["label"], "prefix of spectrum");
    assert_eq!(v["points"].as_array().unwrap().len(), 5);
}

#[test]
fn verify_command_prints_constants() {
    let v = json(&run(&["verify-paper-example", "-N", "40"]));
    assert!((v["fit"]["k_abs_sq"].as_f64().unwrap() - 2.56).abs() < 1e-6);
    assert!((v["fit"]["two_re_k"].as_f64().unwrap() - 2.56).abs() < 1e-6);
    assert_eq!(v["obstruction"]["case"], "Case1");
    assert_eq!(v["hypotheses_all_hold"], true);
}

#[test]
fn output_is_byte_identical() {
    let args = ["verify-paper-example", "-N", "32"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c1 = run(&["compose", "--phi", MODULUS_SQ, "--psi", MODULUS_SQ]);
    let c2 = run(&["compose", "--phi", MODULUS_SQ, "--psi", MODULUS_SQ]);
    assert_eq!(c1.stdout, c2.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["gamma", "--symbol", "{bad"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--theta", "abc"]).status.code(), Some(2));
    assert_eq!(run(&["gamma", "--symbol", MODULUS_SQ, "-N", "1"]).status.code(), Some(2));
    // Wick series needs more terms than N = 4 at r = 2.
    let out = run(&["wick", "--symbol", MODULUS_SQ, "-N", "4"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("need N >="));
    assert!(out.stdout.is_empty());
    let poly = r#"{"kind":"poly","terms":[{"j":1,"k":0,"c":{"re":1,"im":0}}]}"#;
    assert_eq!(run(&["gamma", "--symbol", poly]).status.code(), Some(4));
    let growing = r#"{"kind":"radial_exponential","lambda":{"re":1.5,"im":0}}"#;
    assert_eq!(run(&["gamma", "--symbol", growing]).status.code(), Some(4));
    assert_eq!(run(&["heat", "--symbol", MODULUS_SQ, "--t", "0"]).status.code(), Some(4));
}

#[test]
fn config_env_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"truncation": 5, "format": "csv"}"#).unwrap();
    let cfg_arg = cfg.to_str().unwrap();

    let out = run(&["gamma", "--symbol", MODULUS_SQ, "--config", cfg_arg]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 6);

    let out = run(&["gamma", "--symbol", MODULUS_SQ, "--config", cfg_arg, "-N", "2", "--format", "json"]);
    assert_eq!(json(&out)["entries"].as_array().unwrap().len(), 2);

    let out = Command::new(BIN)
        .args(["gamma", "--symbol", MODULUS_SQ])
        .env("FOCK_TOEPLITZ_TOL", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    std::fs::write(&cfg, r#"{"unknown": 1}"#).unwrap();
    assert_eq!(run(&["gamma", "--symbol", MODULUS_SQ, "--config", cfg_arg]).status.code(), Some(2));
}

#[test]
fn symbol_from_file_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let sym = dir.path().join("s.json");
    std::fs::write(&sym, MODULUS_SQ).unwrap();
    let dest = dir.path().join("out.json");
    let arg = format!("@{}", sym.display());
    let out = run(&["gamma", "--symbol", &arg, "-N", "3", "--output", dest.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&dest).unwrap()).unwrap();
    assert_eq!(re(&v["entries"][2]["gamma"]), 3.0);
}

#[test]
fn classify_leading_minus() {
    // |-1-i|^2 = 2 > 2 Re = -2.
    let v = json(&run(&["classify", "--theta", "-1-i"]));
    assert_eq!(v["case"], "Case2");
    assert_eq!(v["margin"].as_f64(), Some(4.0));
}
