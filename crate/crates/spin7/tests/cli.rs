use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spin7"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn scratch(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("spin7-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("scratch dir");
    let path = dir.join(name);
    std::fs::write(&path, content).expect("scratch file");
    path
}

#[test]
fn identities_pass_with_default_seed() {
    let out = run(&["identities", "--samples", "4"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json report");
    assert_eq!(report["schema"], 1);
    assert_eq!(report["pass"], true);
    assert!(report["checks"].as_array().expect("checks").len() >= 20);
}

#[test]
fn reports_are_byte_identical_for_equal_configs() {
    let a = run(&["identities", "--samples", "3", "--seed", "11"]);
    let b = run(&["identities", "--samples", "3", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["identities", "--samples", "3", "--seed", "12"]);
    assert_eq!(code(&c), 0);
}

#[test]
fn flipping_one_sign_of_phi_fails_the_self_duality_check() {
    let out = run(&["identities", "--samples", "2", "--inject", "phi-sign"]);
    assert_eq!(code(&out), 1);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json report");
    let self_dual = report["checks"]
        .as_array()
        .expect("checks")
        .iter()
        .find(|c| c["name"] == "self-dual")
        .expect("self-dual row");
    assert_eq!(self_dual["pass"], false);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("self-dual"), "{stderr}");
}

#[test]
fn wrong_torsion_coefficient_fails_the_dual_route() {
    let out = run(&[
        "identities",
        "--samples",
        "2",
        "--inject",
        "torsion-coefficient",
    ]);
    assert_eq!(code(&out), 1);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("torsion-dual-route"), "{stderr}");
}

#[test]
fn decompose_splits_a_two_form() {
    let form = scratch(
        "e01.json",
        r#"{ "degree": 2, "terms": [ { "indices": [0, 1], "coeff": 1.0 } ] }"#,
    );
    let out = run(&["decompose", form.to_str().expect("path")]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json report");
    let comps = report["details"]["components"].as_array().expect("components");
    let norms: Vec<f64> = comps
        .iter()
        .map(|c| c["norm"].as_f64().expect("norm"))
        .collect();
    let total: f64 = norms.iter().map(|n| n * n).sum();
    assert!((total - 1.0).abs() < 1e-10);
    assert_eq!(comps[0]["label"], "2_7");
    assert_eq!(comps[1]["label"], "2_21");
}

#[test]
fn decompose_rejects_unsupported_degree() {
    let form = scratch(
        "deg5.json",
        r#"{ "degree": 5, "terms": [ { "indices": [0, 1, 2, 3, 4], "coeff": 1.0 } ] }"#,
    );
    let out = run(&["decompose", form.to_str().expect("path")]);
    assert_eq!(code(&out), 2);
}

#[test]
fn malformed_fixture_json_is_an_input_error() {
    let fixture = scratch("bad.json", "this is not json");
    let out = run(&["torsion", fixture.to_str().expect("path")]);
    assert_eq!(code(&out), 2);
    let out = run(&["torsion", "/definitely/not/a/file.json"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn invalid_run_config_is_an_input_error() {
    let out = run(&["identities", "--samples", "0"]);
    assert_eq!(code(&out), 2);
    let out = run(&["identities", "--tol", "-1.0"]);
    assert_eq!(code(&out), 2);
    let out = run(&["no-such-command"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn flat_fixture_reports_zero_torsion() {
    let fixture = scratch("flat.json", r#"{ "kind": "flat" }"#);
    let out = run(&["torsion", fixture.to_str().expect("path"), "--samples", "3"]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json report");
    assert_eq!(report["details"]["class"]["class"], "parallel");
    for c in report["checks"].as_array().expect("checks") {
        assert_eq!(c["max_residual"], "0.00e0", "{}", c["name"]);
    }
}

#[test]
fn conformal_fixture_classifies_and_passes_curvature() {
    let fixture = scratch("conf.json", r#"{ "kind": "conformal", "epsilon": 0.01 }"#);
    let out = run(&["curvature", fixture.to_str().expect("path"), "--samples", "4"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json report");
    assert_eq!(
        report["details"]["class"]["class"],
        "locally_conformally_parallel"
    );
    // informational rows are present but never gate
    let coclosed = report["checks"]
        .as_array()
        .expect("checks")
        .iter()
        .find(|c| c["name"] == "curvature-action-scalar-coclosed")
        .expect("coclosed row");
    assert_eq!(coclosed["gating"], false);
}

#[test]
fn killing_accepts_the_adapted_pair_and_rejects_zero() {
    let fixture = scratch("conf2.json", r#"{ "kind": "conformal", "epsilon": 0.01 }"#);
    let adapted = format!(
        r#"{{ "scale": {}, "terms": [
            {{ "amplitude": 1.0, "frequency": [1.0, 0, 0, 0.5, 0, 0, -0.3, 0] }},
            {{ "amplitude": 0.8, "frequency": [0, 1.3, 0, 0, 0.7, 0, 0, 0.4] }},
            {{ "amplitude": 0.6, "frequency": [0.3, 0, -1.1, 0, 0, 0.9, 0, 0] }} ] }}"#,
        -0.01 * 7.0 / 3.0
    );
    let good = scratch("psi_good.json", &adapted);
    let zero = scratch("psi_zero.json", r#"{ "scale": 0.0, "terms": [] }"#);

    let out = run(&[
        "killing",
        fixture.to_str().expect("path"),
        good.to_str().expect("path"),
        "--samples",
        "4",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json report");
    assert_eq!(report["details"]["accepted"], true);

    let out = run(&[
        "killing",
        fixture.to_str().expect("path"),
        zero.to_str().expect("path"),
        "--samples",
        "4",
    ]);
    assert_eq!(code(&out), 1, "a rejected pairing is an identity failure");

    let flat = scratch("flat2.json", r#"{ "kind": "flat" }"#);
    let out = run(&[
        "killing",
        flat.to_str().expect("path"),
        zero.to_str().expect("path"),
        "--samples",
        "4",
    ]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json report");
    for c in report["checks"].as_array().expect("checks") {
        assert_eq!(c["max_residual"], "0.00e0");
    }
}

#[test]
fn schema_flag_prints_and_exits_cleanly() {
    let out = run(&["--schema"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for needle in ["form JSON", "fixture JSON", "dilation JSON", "report JSON", "Exit codes"] {
        assert!(text.contains(needle), "missing {needle}");
    }
}

#[test]
fn verbose_adds_exact_residuals_and_out_writes_the_same_bytes() {
    let plain = run(&["identities", "--samples", "2"]);
    assert!(!stdout(&plain).contains("residual_exact"));
    let verbose = run(&["identities", "--samples", "2", "--verbose"]);
    assert!(stdout(&verbose).contains("residual_exact"));

    let target = std::env::temp_dir().join(format!("spin7-out-{}.json", std::process::id()));
    let out = run(&[
        "identities",
        "--samples",
        "2",
        "--out",
        target.to_str().expect("path"),
    ]);
    assert_eq!(code(&out), 0);
    let written = std::fs::read(&target).expect("report written");
    assert_eq!(written, out.stdout);
    let _ = std::fs::remove_file(&target);
}
