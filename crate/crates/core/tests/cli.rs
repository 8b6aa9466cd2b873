use std::path::PathBuf;
use std::process::{Command, Output};

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn diffhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diffhom"))
        .args(args)
        .env_remove("DIFFHOM_MAX_BOX")
        .env_remove("DIFFHOM_MAX_MONOMIALS")
        .env_remove("DIFFHOM_MAX_ENUMERATION")
        .env_remove("DIFFHOM_MEMBERSHIP_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dim_prints_the_dimension() {
    let o = diffhom(&["dim", "-n", "1", "-d", "2", "-k", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "4\n");
}

#[test]
fn generators_json_and_csv() {
    let o = diffhom(&["generators", "-n", "2", "-k", "2", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let counts: Vec<u64> = v["families"].as_array().unwrap().iter().map(|f| f["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, [3, 3, 9]);
    let o = diffhom(&["generators", "-n", "1", "-k", "2", "--csv"]);
    assert_eq!(stdout(&o), "degree,formula,computed\n1,2,2\n2,1,1\n3,2,2\n");
}

#[test]
fn verify_subcommand_reports_json() {
    let o = diffhom(&["verify", "spanning", "--mu", "2,2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["rank"], 6);
}

#[test]
fn golden_reports_are_reproduced() {
    let cfg = golden("suite_small.config.json");
    let dir = tempfile::tempdir().unwrap();
    for (format, file) in [("json", "suite_small.report.json"), ("csv", "suite_small.report.csv")] {
        let out = dir.path().join(file);
        let o = diffhom(&[
            "verify-all",
            "--config",
            cfg.to_str().unwrap(),
            "--format",
            format,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        let produced = std::fs::read_to_string(&out).unwrap();
        let expected = std::fs::read_to_string(golden(file)).unwrap();
        assert_eq!(produced, expected, "{file} drifted");
    }
}

#[test]
fn config_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"d": {"min": 4, "max": 2}}"#).unwrap();
    let o = diffhom(&["verify-all", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = diffhom(&["verify-all", "--config", "/nonexistent/cfg.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn resource_caps_from_the_environment_skip() {
    let cfg = golden("suite_small.config.json");
    let o = Command::new(env!("CARGO_BIN_EXE_diffhom"))
        .args(["verify-all", "--config", cfg.to_str().unwrap(), "--format", "text"])
        .env("DIFFHOM_MAX_BOX", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let text = stdout(&o);
    assert!(text.contains("SKIP 4-harmonic.perp-dim[d=2,k=1]"));
    assert!(text.contains("0 failed"));
    let o = Command::new(env!("CARGO_BIN_EXE_diffhom"))
        .args(["dim", "-n", "1", "-d", "2", "-k", "1"])
        .env("DIFFHOM_MAX_MONOMIALS", "abc")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
