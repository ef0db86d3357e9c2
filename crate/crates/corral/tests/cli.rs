//! Black-box tests of the command-line interface: exit codes, report
//! determinism, and the JSON contract.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn corral(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corral"))
        .args(args)
        .env_remove("CORRAL_COLOR")
        .output()
        .expect("spawn corral")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn props_reports_classification() {
    let out = corral(&["monoid", "props", &fixture("pyramid.mon")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("weakly toric: yes; toric: yes"), "{text}");
    assert!(text.contains("simplicial: no"), "{text}");
}

#[test]
fn corners_census_output() {
    let out = corral(&["model", "corners", &fixture("pyramid.model")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("grading C0:1 C1:4 C2:4 C3:1"));
}

#[test]
fn reflect_shows_group_structure() {
    let out = corral(&["monoid", "reflect", &fixture("half_torsion.mon")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("groupification: Z^1 (+) Z/2"));
}

#[test]
fn germ_check_explains_failures() {
    let out = corral(&["germ", "check", &fixture("diag_parab.germ")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("c-transverse: no (face condition)"));

    let out = corral(&["germ", "check", &fixture("shear.germ")]);
    assert!(stdout(&out).contains("c-transverse: no (normal surjectivity)"));

    let out = corral(&["germ", "check", &fixture("identity2.germ")]);
    assert!(stdout(&out).contains("c-transverse: yes"));
}

#[test]
fn germ_product_grading() {
    let out = corral(&["germ", "product", &fixture("mult.germ")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("dim W = 3"), "{text}");
    assert!(text.contains("C0:1 C1:4 C2:4 C3:1"), "{text}");
    assert!(text.contains("law i+l=j+k: pass"), "{text}");
}

#[test]
fn bcot_commands_pass_on_fixtures() {
    let out = corral(&[
        "bcot",
        "fibre",
        &fixture("vanishing.cring"),
        &fixture("vanishing_at.pt"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("fibre dim: 0"));

    let out = corral(&[
        "bcot",
        "pushout",
        &fixture("mult_left.cring"),
        &fixture("mult_right.cring"),
        &fixture("mult_square.pt"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("exactness check: pass"));

    let out = corral(&[
        "bcot",
        "corner-seq",
        &fixture("pyramid.cring"),
        &fixture("pyramid_vertex.pt"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("sequence 0 -> 0 -> 3 -> 3 -> 0"));
}

#[test]
fn domain_errors_exit_one() {
    // a monoid with torsion has no corner local model
    let out = corral(&["model", "corners", &fixture("half_torsion.mon")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("status: domain_error"));
}

#[test]
fn parse_errors_exit_two() {
    let out = corral(&["monoid", "props", &fixture("bad_syntax.mon")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("expected `;`"));

    // wrong document kind for the command
    let out = corral(&["germ", "check", &fixture("pyramid.mon")]);
    assert_eq!(out.status.code(), Some(2));

    // missing file
    let out = corral(&["monoid", "props", "no_such_file.mon"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exceeded_bound_exits_three() {
    let out = corral(&["monoid", "reflect", &fixture("pyramid.mon"), "--bound", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("status: unknown"));
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    for args in [
        vec!["monoid", "props", &fixture("pyramid.mon"), "--json"],
        vec!["model", "corners", &fixture("pyramid.model"), "--json"],
        vec!["germ", "product", &fixture("mult.germ"), "--json"],
        vec![
            "bcot",
            "fibre",
            &fixture("plane21.cring"),
            &fixture("plane21_interior.pt"),
            "--json",
        ],
    ] {
        let strs: Vec<&str> = args.iter().map(|s| s.as_ref()).collect();
        let a = corral(&strs);
        let b = corral(&strs);
        assert_eq!(a.stdout, b.stdout, "nondeterministic output for {args:?}");
        let parsed: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(parsed["format"], 1);
        assert_eq!(parsed["status"], "ok");
    }
}

#[test]
fn tolerance_flag_is_echoed() {
    let out = corral(&[
        "bcot",
        "fibre",
        &fixture("plane21.cring"),
        &fixture("plane21_interior.pt"),
        "--tol",
        "1e-6",
        "--json",
    ]);
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["tolerance"], 1e-6);
}

#[test]
fn color_env_toggles_ansi() {
    let plain = corral(&["monoid", "props", &fixture("pyramid.mon")]);
    assert!(!stdout(&plain).contains("\x1b["));
    let colored = Command::new(env!("CARGO_BIN_EXE_corral"))
        .args(["monoid", "props", &fixture("pyramid.mon")])
        .env("CORRAL_COLOR", "1")
        .output()
        .unwrap();
    assert!(stdout(&colored).contains("\x1b[32myes\x1b[0m"));
}
