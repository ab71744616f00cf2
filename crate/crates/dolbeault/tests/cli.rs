//! End-to-end checks of the binary: exit codes, determinism, and the file
//! formats the commands accept.

use std::io::Write;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dolbeault"))
}

fn write_tmp(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

#[test]
fn analyze_cuspidal_cubic_succeeds() {
    let f = write_tmp(r#"{"plane_curve": "y^2*z - x^3"}"#);
    let out = bin()
        .args(["analyze", "--input"])
        .arg(f.path())
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"delta\": 1"));
    assert!(text.contains("\"mult_prime\": 1"));
    assert!(text.contains("\"genus\": 0"));
}

#[test]
fn non_squarefree_input_exits_2() {
    let f = write_tmp(r#"{"plane_curve": "x^2*y - 2*x*y*z + y*z^2"}"#);
    let out = bin()
        .args(["analyze", "--input"])
        .arg(f.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("squarefree"));
}

#[test]
fn unparseable_input_exits_2() {
    let f = write_tmp("this is not json");
    let out = bin()
        .args(["cohomology", "--input"])
        .arg(f.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cohomology_table_for_cuspidal_cubic() {
    let f = write_tmp(
        r#"{"components": [{"id": "c1", "genus": 0}],
            "singular_points": [{"id": "p1", "branches": [{"component": "c1", "s": 2}]}]}"#,
    );
    let out = bin()
        .args(["cohomology", "--format", "table", "--input"])
        .arg(f.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("h_w^{0,0}"), "missing table in:\n{}", text);
    assert!(text.contains("[pass]"));
}

#[test]
fn structured_reports_are_byte_identical_across_runs() {
    let f = write_tmp(r#"{"plane_curve": ["y^2*z - x^3 - x^2*z"]}"#);
    let run = || {
        bin()
            .args(["analyze", "--input"])
            .arg(f.path())
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn local_command_reports_filtration() {
    let out = bin()
        .args(["local", "--s", "2", "--grid", "64"])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("k >= -1"),
        "missing weak filtration:\n{}",
        text
    );
    assert!(text.contains("marginal-divergent"));
}

#[test]
fn bad_grid_size_exits_2() {
    let out = bin()
        .args(["local", "--s", "2", "--grid", "100"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_output_feeds_cohomology() {
    // the curve spec emitted by analyze is directly consumable: run the
    // reducible two-conic curve through analyze, extract results.curve_spec,
    // then compute its cohomology table with per-component degrees
    let plane = write_tmp(r#"{"plane_curve": ["y*z - x^2", "y*z + x^2"]}"#);
    let out = bin().args(["analyze", "--input"]).arg(plane.path()).output().unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let spec = report["results"]["curve_spec"].clone();
    let spec_file = write_tmp(&serde_json::to_string(&spec).unwrap());
    let out = bin()
        .args(["cohomology", "--mode", "generic", "--bundle-degree", "c1=4,c2=-1", "--input"])
        .arg(spec_file.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["results"]["m"], 2);
    assert_eq!(report["results"]["deg_L"], 3);
    // two tacnodes with smooth branches: deg(Z - |Z|) = 0
    assert_eq!(report["results"]["deg_Z_minus_absZ"], 0);
    for id in report["identities"].as_array().unwrap() {
        assert_eq!(id["pass"], true, "{}", id);
    }
}

#[test]
fn corrupted_spec_lists_violation() {
    let f = write_tmp(
        r#"{"components": [{"id": "c1", "genus": 0}],
            "singular_points": [{"id": "p1", "branches": [{"component": "c1", "s": 1}]}]}"#,
    );
    let out = bin()
        .args(["analyze", "--input"])
        .arg(f.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not singular"));
}
