use std::path::PathBuf;
use std::process::{Command, Output};

use conevol::io::{int_poly_from_json, read_trace, ResultJson};
use conevol::io::census::census_lookup;
use conevol::pipeline::run_pipeline;
use conevol::selftest::entry_config;

fn conevol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conevol")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("conevol-cli-{}-{name}", std::process::id()))
}

#[test]
fn human_output_for_figure_eight() {
    let o = conevol(&["compute", "--census", "4_1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "F(V) = 3888*V^2 - 1"), "{out}");
    assert!(out.contains("volume = 1.60375074774896045696985772361654848791"));
    assert!(out.contains("alpha0 = 2.0943951023931954923"));
    assert!(out.contains("step  7: factor 2 of 3 (unique)"));
}

#[test]
fn json_output_matches_golden_file() {
    let o = conevol(&["compute", "--census", "4_1", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let golden = std::fs::read_to_string(fixture("golden_4_1.json")).unwrap();
    assert!(stdout(&o) == golden, "JSON output drifted from tests/fixtures/golden_4_1.json");
}

#[test]
fn json_polynomials_parse_back_exactly() {
    let o = conevol(&["compute", "--census", "m003", "--format", "json"]);
    let j: ResultJson = serde_json::from_str(&stdout(&o)).unwrap();
    let e = census_lookup("m003").unwrap();
    let r = run_pipeline(&e.a_poly, Some(&e.witness(256)), &entry_config(&e, 0, 256)).unwrap();
    assert_eq!(int_poly_from_json(&j.riley).unwrap(), r.riley);
    assert_eq!(int_poly_from_json(&j.p).unwrap(), r.p_poly);
    assert_eq!(int_poly_from_json(&j.q).unwrap(), r.q_poly);
    assert_eq!(int_poly_from_json(&j.s).unwrap(), r.s_poly);
    assert_eq!(int_poly_from_json(&j.f).unwrap(), r.f_poly);
    assert_eq!(int_poly_from_json(&j.m0_minpoly).unwrap(), r.m0_minpoly);
    assert_eq!(j.trace.steps.len(), 19);
}

#[test]
fn trace_file_and_replay() {
    let path = scratch("trace.json");
    let o = conevol(&["compute", "--census", "4_1", "--trace", path.to_str().unwrap()]);
    assert!(o.status.success());
    let trace = read_trace(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(trace.is_complete());
    let mut args: Vec<String> = ["compute", "--a-poly", "M^4 + L*(-M^8 + M^6 + 2*M^4 + M^2 - 1) + L^2*M^4"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for (step, idx) in trace.overrides() {
        args.push("--factor-index".into());
        args.push(format!("{step}={idx}"));
    }
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let o = conevol(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("F(V) = 3888*V^2 - 1"));
    assert!(stdout(&o).contains("(override)"));
}

#[test]
fn a_polynomial_from_file_with_explicit_witness() {
    let path = scratch("m017.txt");
    std::fs::write(
        &path,
        "# m017\n-M^5 + L^2*(M - M^2 + 2*M^4 + 2*M^5 - M^6)\n  + L^4*(1 - 2*M - 2*M^2 + M^4 - M^5) + L^6*M\n",
    )
    .unwrap();
    let o = conevol(&[
        "compute",
        "--a-poly",
        path.to_str().unwrap(),
        "--witness-m",
        "-0.7077961025207673,0.7064167872130528",
        "--witness-w",
        "1.8896609006664767,0",
        "--tol-circle",
        "40",
        "--angle-halving",
    ]);
    std::fs::remove_file(&path).ok();
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("F(V) = 191666276487*V^8 + 6438924576*V^6 + 64457856*V^4 - 55296*V^2 - 4096"), "{out}");
    assert!(out.contains("alpha0 = 2.407169813554454"), "{out}");
}

#[test]
fn census_list_names_every_entry() {
    let o = conevol(&["census-list"]);
    assert!(o.status.success());
    let names: Vec<String> = stdout(&o).lines().map(|l| l.split('\t').next().unwrap().to_string()).collect();
    assert_eq!(names, ["4_1", "m003", "5_2", "m017", "m016"]);
}

#[test]
fn usage_errors_exit_with_2() {
    let o = conevol(&["compute", "--census", "6_1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("available: 4_1, m003, 5_2, m017, m016"));
    let o = conevol(&["compute", "--a-poly", "M +* L"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1, column 4"));
    let o = conevol(&["compute", "--census", "4_1", "--factor-index", "7=9"]);
    assert_eq!(o.status.code(), Some(2));
    let o = conevol(&["compute", "--census", "4_1", "--witness-m", "2,0", "--witness-w", "1,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(conevol(&["compute"]).status.code(), Some(2));
    assert_eq!(conevol(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn ambiguous_selection_exits_with_3() {
    let o = conevol(&["compute", "--a-poly", "(L - M^2)*(L - M^4)"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("--factor-index"));
}
