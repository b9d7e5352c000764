//! End-to-end tests of the installed binary: output values, file formats,
//! exit codes, and determinism.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_capslep"))
        .args(args)
        .output()
        .expect("spawn capslep")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .skip(1) // column header
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn header_value<'a>(text: &'a str, key: &str) -> &'a str {
    let prefix = format!("# {key} = ");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("missing header {key} in:\n{text}"))
}

#[test]
fn shannon_values() {
    let out = stdout(&run(&["shannon", "--L", "18", "--theta", "60"]));
    let n: f64 = header_value(&out, "N").parse().unwrap();
    assert!((n - 90.0).abs() < 1e-12, "N = {n}");
    assert_eq!(data_rows(&out).len(), 37); // m = -18..=18

    let out = stdout(&run(&["shannon", "--L", "1", "--theta", "180"]));
    let n: f64 = header_value(&out, "N").parse().unwrap();
    assert!((n - 3.0).abs() < 1e-12, "N = {n}");
}

#[test]
fn spectrum_row_count_and_order() {
    let out = stdout(&run(&["spectrum", "--L", "1", "--theta", "90"]));
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 3);
    let etas: Vec<f64> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    assert!(etas.windows(2).all(|w| w[0] >= w[1] - 1e-13));
    assert!((etas[0] - 0.875).abs() < 1e-14);
}

#[test]
fn solve_json_schema_and_roundtrip() {
    let out = stdout(&run(&[
        "solve", "--L", "4", "--theta", "60", "--m", "2", "--format", "json",
    ]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "capslep-solution/1");
    assert_eq!(v["L"], 4);
    assert_eq!(v["m"], 2);
    let eta = v["eta"].as_array().unwrap();
    assert_eq!(eta.len(), 3); // l = 2, 3, 4
    assert!(eta.iter().all(|e| {
        let e = e.as_f64().unwrap();
        (-1e-15..=1.0 + 1e-13).contains(&e)
    }));
}

#[test]
fn eval_matches_closed_form() {
    // L = 1, m = 1, full sphere: G(x) = F_11(x) = sqrt(3/8) (1 + x).
    let out = stdout(&run(&[
        "eval", "--L", "1", "--theta", "90", "--m", "1", "--grid", "0:180:5",
    ]));
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 5);
    for r in rows {
        let x: f64 = r[1].parse().unwrap();
        let g: f64 = r[2].parse().unwrap();
        let want = 0.6123724356957945 * (1.0 + x);
        assert!((g - want).abs() < 1e-14, "x={x} g={g} want={want}");
    }
}

#[test]
fn flm_tabulation_values() {
    let out = stdout(&run(&["flm", "--L", "1", "--m", "0", "--grid", "0:0:1"]));
    let g: f64 = data_rows(&out)[0][1].parse().unwrap();
    assert!((g - 0.8660254037844386).abs() < 1e-15, "F_10(0) = {g}");

    let out = stdout(&run(&["flm", "--L", "2", "--m=-1", "--grid=-1:-1:1"]));
    let g: f64 = data_rows(&out)[0][1].parse().unwrap();
    assert!((g + 1.5811388300841898).abs() < 1e-15, "F_2,-1(-1) = {g}");
}

#[test]
fn error_analysis_small_case_is_exact() {
    let out = stdout(&run(&["error-analysis", "--L", "2", "--theta", "90", "--m", "1"]));
    let eps = f64::EPSILON / 2.0;
    for key in ["max_err_J_over_epsM", "max_err_K_over_epsM"] {
        let v: f64 = header_value(&out, key).parse().unwrap();
        assert!(v <= 10.0, "{key} = {v} eps");
    }
    for r in data_rows(&out) {
        let err_j: f64 = r[4].parse().unwrap();
        assert!(err_j <= 10.0 * eps);
    }
}

#[test]
fn verify_reports_and_exits_clean() {
    let out = run(&["verify", "--L", "12", "--theta", "60"]);
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let ok_lines = text.lines().filter(|l| l.contains("ok")).count();
    assert!(out.status.success(), "verify failed:\n{text}");
    assert!(ok_lines >= 10, "only {ok_lines} ok lines:\n{text}");
}

#[test]
fn invalid_configuration_exits_2() {
    for args in [
        &["verify", "--L", "12", "--theta", "0"][..],
        &["shannon", "--L", "12"][..],              // missing --theta
        &["shannon", "--L", "12", "--theta", "x"][..],
        &["nonsense"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn runs_are_deterministic() {
    let a = run(&["spectrum", "--L", "10", "--theta", "45"]);
    let b = run(&["spectrum", "--L", "10", "--theta", "45", "--threads", "2"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn csv_floats_roundtrip_bitwise() {
    let out = stdout(&run(&["solve", "--L", "6", "--theta", "50", "--m", "1"]));
    for row in data_rows(&out) {
        for field in &row[1..] {
            let v: f64 = field.parse().unwrap();
            assert_eq!(format!("{v:.16e}"), *field);
        }
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("capslep-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("shannon.csv");
    let out = run(&[
        "shannon", "--L", "6", "--theta", "30", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(Path::new(&path)).unwrap();
    assert!(text.contains("# N = "));
    std::fs::remove_dir_all(&dir).unwrap();
}
