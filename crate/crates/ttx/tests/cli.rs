use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn ttx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ttx")).args(args).current_dir(root()).output().expect("ttx runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_tau3() {
    let o = ttx(&["validate", "tracks/tau3.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "valid; χ=−3; boundary: 2×3-pronged, 3×0-pronged");
}

#[test]
fn validate_reports_violations() {
    let dir = std::env::temp_dir().join(format!("ttx-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let text = std::fs::read_to_string(root().join("tracks/tau3.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    // drop one edge so its halves dangle
    v["edges"].as_array_mut().unwrap().pop();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let o = ttx(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("invalid"));

    let o = ttx(&["validate", dir.join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn spectral_clique_bracket() {
    let o = ttx(&["spectral", "--matrix", "cat/ff_k2.json", "--method", "clique", "--tol", "1e-9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("λ ∈ [1.722083805, 1.722083807]"), "{}", stdout(&o));

    let o = ttx(&["spectral", "--matrix", "cat/ff_k2.json", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["method"], "charpoly");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ttx(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ttx(&["spectral", "--matrix", "cat/ff_k2.json", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(ttx(&["spectral", "--matrix", "cat/ff_k2.json", "--method", "power"]).status.code(), Some(2));
    assert_eq!(ttx(&["face", "cat/datasets/l6a2.json", "--class", "1,k"]).status.code(), Some(2));
}

#[test]
fn run_emits_matrix_and_checks() {
    let out = std::env::temp_dir().join(format!("ttx-run-{}.json", std::process::id()));
    let o = ttx(&[
        "run",
        "cat/scripts/l6a2-k03.json",
        "--emit-matrix",
        out.to_str().unwrap(),
        "--check-reciprocal",
        "--check-pf",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let m: polyexact::IntMatrix = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(m.char_poly().unwrap(), polyexact::lt_polynomial(1, 3).unwrap());

    let o = ttx(&["run", "cat/scripts/l6a2-k03.json", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["reciprocal"], true);
}

#[test]
fn certify_passes() {
    let o = ttx(&["certify", "cat/scripts/l13n5885-k03.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("certificate: passed"));
}

#[test]
fn face_sweep_json() {
    let o = ttx(&["face", "cat/datasets/l13n5885.json", "--sweep", "k=1..4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["classes"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows[0]["error"].is_string());
    for (i, row) in rows[1..].iter().enumerate() {
        assert_eq!(row["report"]["norm"], 2 * (i as u64 + 2));
    }
    let o = ttx(&["face", "cat/datasets/l6a2.json", "--class", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn catalog_single_orbit() {
    let out = std::env::temp_dir().join(format!("ttx-cat-{}.json", std::process::id()));
    let o = ttx(&["catalog", "verify", "--filter", "group=single-orbit", "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("6/6 pass"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["passed"], 6);
}

#[test]
fn output_is_deterministic() {
    let a = ttx(&["analyze", "tracks/tau3.json", "--json"]);
    let b = ttx(&["analyze", "tracks/tau3.json", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["radical_spanned"], true);
}
