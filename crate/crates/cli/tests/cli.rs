use std::path::{Path, PathBuf};
use std::process::Command;

use identent_cli::files::StateFile;
use identent_cli::report::{BellReport, Report};
use identent_cli::{run_with, EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn golden(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(p).unwrap()
}

/// Runs in-process; returns (exit code, stdout, stderr).
fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("identent").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn run_file(cmd: &str, file: &str, extra: &[&str]) -> (i32, String, String) {
    let path = fixture(file);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

#[test]
fn classify_fermion_e1_e2_golden() {
    let (code, out, err) = run_file("classify", "fermion_e1_e2.json", &[]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out, golden("classify_fermion_e1_e2.json"));
    let r: Report = serde_json::from_str(&out).unwrap();
    assert_eq!(r.verdict, "non-entangled");
    assert_eq!(r.subcase, "fermion-slater-one");
    assert!((r.entropy - 1.0).abs() < 1e-12);
    assert!(r.witness.is_some());
}

#[test]
fn classify_boson_unequal_golden() {
    let (code, out, _) = run_file("classify", "boson_unequal.json", &[]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, golden("classify_boson_unequal.json"));
    let r: Report = serde_json::from_str(&out).unwrap();
    assert_eq!(r.verdict, "entangled");
    // -0.75 log2 0.75 - 0.25 log2 0.25
    let expect = -(0.75f64 * 0.75f64.log2() + 0.25 * 0.25f64.log2());
    assert!((r.entropy - expect).abs() < 1e-12);
    assert!((r.entropy - 0.8113).abs() < 1e-4);
    assert!((r.coefficients[0] - 0.75f64.sqrt()).abs() < 1e-12);
    assert!((r.coefficients[1] - 0.5).abs() < 1e-12);
    assert!(r.witness.is_none());
}

#[test]
fn classify_other_goldens() {
    for (file, gold, verdict) in [
        (
            "boson_orthogonal_pair.json",
            "classify_boson_orthogonal_pair.json",
            "non-entangled",
        ),
        (
            "fermion_slater_two.json",
            "classify_fermion_slater_two.json",
            "entangled",
        ),
    ] {
        let (code, out, _) = run_file("classify", file, &[]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, golden(gold), "{file}");
        let r: Report = serde_json::from_str(&out).unwrap();
        assert_eq!(r.verdict, verdict);
    }
}

#[test]
fn bell_epr_bohm_golden() {
    let (code, out, _) = run(&["bell", "epr-bohm", "--setting", "0,45,135,90"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, golden("bell_epr_bohm.json"));
    let r: BellReport = serde_json::from_str(&out).unwrap();
    assert!((r.chsh - 2.0 * 2f64.sqrt()).abs() < 1e-9);
    assert!(r.chsh.to_string().starts_with("2.8284271247"));
    assert!(r.violates_classical_bound);
}

#[test]
fn bell_default_setting_is_standard() {
    let (_, with, _) = run(&["bell", "epr-bohm", "--setting", "0,45,135,90"]);
    let (code, without, _) = run(&["bell", "epr-bohm"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(with, without);
}

#[test]
fn decompose_and_scan_goldens() {
    let (code, out, _) = run_file("decompose", "boson_unequal.json", &[]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, golden("decompose_boson_unequal.json"));
    let (code, out, _) = run(&["bell", "product-like", "--scan", "8"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, golden("scan_product_like.json"));
}

#[test]
fn text_format() {
    let (code, out, _) = run_file("classify", "fermion_e1_e2.json", &["--format", "text"]);
    assert_eq!(code, EXIT_OK);
    assert!(out
        .lines()
        .any(|l| l.starts_with("verdict") && l.ends_with("non-entangled")));
}

#[test]
fn properties_with_and_without_projector() {
    let (code, out, _) = run_file("properties", "fermion_e1_e2.json", &[]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["attributed"], true);
    for k in ["phi", "chi"] {
        let e = v["witness"][k]["e_p_value"].as_f64().unwrap();
        assert!((e - 1.0).abs() < 1e-9);
    }

    let (code, out, _) = run_file(
        "properties",
        "fermion_e1_e2.json",
        &["--projector", "[[0.6,0],[0.8,0],[0,0],[0,0]]"],
    );
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!((v["e_p_value"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(v["pp_value"].as_f64().unwrap().abs() < 1e-12);

    let (_, out, _) = run_file("properties", "fermion_slater_two.json", &[]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["attributed"], false);
    assert!(v["witness"].is_null());
}

#[test]
fn make_state_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.json");
    let (code, _, err) = run(&[
        "make-state",
        "--mode",
        "symmetrize",
        "--phi",
        "[[1,0],[0,0]]",
        "--chi",
        "[[0.6,0],[0.8,0]]",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let file: StateFile = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(file.dimension, 2);
    let (code, text, _) = run(&["classify", out.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let r: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(r.subcase, "boson-non-orthogonal-pair");
    // closed form at overlap 0.6
    assert!((r.coefficients[0] - 0.970_142_500_145_332).abs() < 1e-9);
    assert!((r.coefficients[1] - 0.242_535_625_036_333).abs() < 1e-9);
}

#[test]
fn make_state_vector_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let phi = dir.path().join("phi.json");
    std::fs::write(&phi, "[[1, 0], [0, 0], [0, 0]]").unwrap();
    let out = dir.path().join("s.json");
    let (code, _, err) = run(&[
        "make-state",
        "--mode",
        "antisymmetrize",
        "--phi",
        phi.to_str().unwrap(),
        "--chi",
        "[[0,0],[0,0],[1,0]]",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    // identical fermion states cannot be antisymmetrized
    let (code, _, err) = run(&[
        "make-state",
        "--mode",
        "antisymmetrize",
        "--phi",
        phi.to_str().unwrap(),
        "--chi",
        phi.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_VALIDATION);
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn report_roundtrips() {
    let (_, out, _) = run_file("classify", "boson_orthogonal_pair.json", &[]);
    let r: Report = serde_json::from_str(&out).unwrap();
    let again = identent_cli::json::to_string(&r).unwrap();
    assert_eq!(again, out);
    let back: Report = serde_json::from_str(&again).unwrap();
    assert_eq!(back, r);
}

#[test]
fn validation_errors_exit_2_with_one_line() {
    for file in [
        "not_antisymmetric.json",
        "both_forms.json",
        "truncated.json",
        "missing.json",
    ] {
        let (code, out, err) = run_file("classify", file, &[]);
        assert_eq!(code, EXIT_VALIDATION, "{file}");
        assert!(out.is_empty());
        assert_eq!(err.lines().count(), 1, "{file}: {err}");
        assert!(err.starts_with("error: "));
    }
    let (code, _, _) = run_file("classify", "fermion_e1_e2.json", &["--tol", "-1"]);
    assert_eq!(code, EXIT_VALIDATION);
    let (code, _, _) = run(&["bell", "epr-bohm", "--setting", "0,45,135"]);
    assert_eq!(code, EXIT_VALIDATION);
    let (code, _, _) = run(&["bell", "epr-bohm", "--scan", "2"]);
    assert_eq!(code, EXIT_VALIDATION);
    let (code, _, _) = run(&["bell", "epr-bohm", "--scan", "8", "--setting", "0,1,2,3"]);
    assert_eq!(code, EXIT_VALIDATION);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, EXIT_VALIDATION);
}

#[test]
fn certification_failure_exits_3() {
    let (code, out, err) = run_file(
        "classify",
        "boson_orthogonal_pair.json",
        &["--tol", "1e-30"],
    );
    assert_eq!(code, EXIT_NUMERICAL);
    assert!(out.is_empty());
    assert!(err.contains("exceeds tolerance"));
}

#[test]
fn help_and_version_exit_0() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("classify"));
    let (code, out, _) = run(&["--version"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn binary_is_deterministic_and_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_identent");
    let file = fixture("boson_unequal.json");
    let a = Command::new(bin)
        .arg("classify")
        .arg(&file)
        .output()
        .unwrap();
    let b = Command::new(bin)
        .arg("classify")
        .arg(&file)
        .output()
        .unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        String::from_utf8(a.stdout).unwrap(),
        golden("classify_boson_unequal.json")
    );

    let bad = Command::new(bin)
        .arg("classify")
        .arg(fixture("truncated.json"))
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_VALIDATION));
    assert!(bad.stdout.is_empty());
    assert_eq!(String::from_utf8(bad.stderr).unwrap().lines().count(), 1);

    let scan = |_: ()| {
        Command::new(bin)
            .args(["bell", "epr-bohm", "--scan", "12"])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(scan(()), scan(()));
}
