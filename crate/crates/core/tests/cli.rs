mod common;

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn gradedgeom(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gradedgeom"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

fn invalid(name: &str) -> String {
    common::fixture_dir().join("invalid").join(format!("{name}.model")).to_string_lossy().into_owned()
}

#[test]
fn invalid_fixtures_map_to_exit_codes() {
    let cases = [
        ("syntax_error", "validate", 2, "2:14"),
        ("unknown_generator", "validate", 2, "unknown generator y at 4:12"),
        ("ce_broken_jacobi", "validate", 4, "generator e1"),
        ("delta_not_square_zero", "validate", 4, "generator u"),
        ("bivector_broken_jacobi", "mc", 1, ""),
    ];
    for (name, cmd, code, needle) in cases {
        let out = gradedgeom(&[cmd, &invalid(name)], None);
        assert_eq!(out.status.code(), Some(code), "{name}");
        assert!(String::from_utf8_lossy(&out.stderr).contains(needle), "{name}");
    }
}

#[test]
fn failed_requirement_prints_residuals() {
    let out = gradedgeom(&["mc", &invalid("bivector_broken_jacobi"), "--format", "structured"], None);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("verdict=fail"));
    assert!(s.contains("residual.weight.3=-x2*p_x1*p_x2*p_x3"));
    assert!(s.contains("maurer_cartan=FAILED"));
}

#[test]
fn reads_standard_input() {
    let out = gradedgeom(&["cohomology", "-"], Some("gen x : (0,0,=); gen xi : (0,1,=) odd; delta xi = x^2\ncutoff weight 6"));
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.lines().any(|l| l.split_whitespace().eq(["H.0", "2"])), "{s}");
}

#[test]
fn flags_override_cutoffs() {
    let path = common::fixture_dir().join("ce_so3.model");
    let out = gradedgeom(&["cohomology", path.to_str().unwrap(), "--degree-window", "2:3", "--format", "structured"], None);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(!s.contains("H.1="));
    assert!(s.contains("H.3=1"));
    let bad = gradedgeom(&["cohomology", path.to_str().unwrap(), "--degree-window", "3:1"], None);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = gradedgeom(&["validate", "/nonexistent/model"], None);
    assert_eq!(out.status.code(), Some(2));
}
