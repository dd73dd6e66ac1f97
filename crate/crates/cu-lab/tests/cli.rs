use std::path::PathBuf;
use std::process::{Command, Output};

fn cu_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cu-lab"))
        .args(args)
        .env_remove("CU_LAB_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn witness(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data/witnesses")
        .join(format!("{name}.json"))
}

#[test]
fn catalog_lists_every_instance() {
    let o = cu_lab(&["catalog", "list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 9);
    assert!(text.contains("ProductFiniteByRay"));
}

#[test]
fn beta_examples() {
    let o = cu_lab(&["beta", "interval01", "3/4", "1/2", "--bound", "64"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("upper   3/64"));
    assert!(text.contains("exact   0"));

    let text = stdout(&cu_lab(&["beta", "uhf", "s:1/2", "s:1"]));
    assert!(text.contains("exact   1/2"));
    let text = stdout(&cu_lab(&["beta", "s1", "1", "1"]));
    assert!(text.contains("exact   0"));
}

#[test]
fn beta_parse_errors_exit_2() {
    let o = cu_lab(&["beta", "s1", "2", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    assert_eq!(cu_lab(&["beta", "interval01", "x", "1"]).status.code(), Some(2));
    assert_eq!(cu_lab(&["beta", "nowhere", "1", "1"]).status.code(), Some(2));
}

#[test]
fn shipped_witnesses_verify() {
    for name in [
        "w_omega_interval",
        "w_cfp_seqcube",
        "w_o6_seqcube",
        "w_beta_s1",
        "w_beta_product",
    ] {
        let path = witness(name);
        let o = cu_lab(&["verify", path.to_str().unwrap()]);
        assert!(o.status.success(), "{name}: {}", stdout(&o));
        assert!(stdout(&o).contains("verified"));
    }
}

#[test]
fn tampered_witness_is_rejected() {
    let text = std::fs::read_to_string(witness("w_omega_interval")).unwrap();
    let tampered = text.replace("\"x_prime\": \"3/4\"", "\"x_prime\": \"1/4\"");
    assert_ne!(text, tampered);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tampered.json");
    std::fs::write(&path, tampered).unwrap();
    let o = cu_lab(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("x' ≤ Σ y_n holds, not a refutation"));
}

#[test]
fn verify_io_and_parse_errors_exit_2() {
    assert_eq!(cu_lab(&["verify", "/does/not/exist.json"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("junk.json");
    std::fs::write(&path, "{\"schema\": 3}").unwrap();
    assert_eq!(cu_lab(&["verify", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn check_with_and_without_certificate() {
    let o = cu_lab(&["check", "s1", "omega"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("proved_exhaustively"));

    let cert = witness("w_omega_interval");
    let o = cu_lab(&["check", "interval01", "omega", "--cert", cert.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("refuted_by_certificate"));

    let o = cu_lab(&["check", "product", "omega", "--cert", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(cu_lab(&["check", "s1", "lunar"]).status.code(), Some(2));
}

#[test]
fn seed_comes_from_the_environment() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_cu-lab"))
        .args(["check", "uhf", "o5", "--samples", "20"])
        .env("CU_LAB_SEED", "43")
        .output()
        .unwrap();
    let explicit = cu_lab(&["check", "uhf", "o5", "--samples", "20", "--seed", "43"]);
    assert_eq!(with_env.stdout, explicit.stdout);
}

#[test]
fn small_report_and_determinism() {
    let args = ["report", "--entries", "s1", "--properties", "omega,beta"];
    let a = cu_lab(&args);
    assert!(a.status.success());
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["outcome"]["kind"], "proved_exhaustively");
    assert_eq!(rows[1]["outcome"]["kind"], "refuted_by_certificate");
    assert_eq!(rows[1]["match"], true);
    assert!(rows[0]["citation"].as_str().is_some_and(|c| !c.is_empty()));
    let b = cu_lab(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn markdown_report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.md");
    let o = cu_lab(&[
        "report",
        "--entries",
        "seqcube",
        "--format",
        "md",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.contains("| seqcube | o6 | RefutedByCertificate (w_o6_seqcube)"));
    assert!(text.contains("no findings"));
}

#[test]
fn unknown_selections_exit_2() {
    assert_eq!(cu_lab(&["report", "--entries", "reals"]).status.code(), Some(2));
    assert_eq!(
        cu_lab(&["report", "--properties", "tidiness"]).status.code(),
        Some(2)
    );
    assert_eq!(cu_lab(&["frobnicate"]).status.code(), Some(2));
}
