//! Acceptance criteria. Each test prints one PASS/FAIL line.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use conevol::float::{BigFloat, ComplexBF};
use conevol::io::census::{census_lookup, CensusEntry};
use conevol::pipeline::{run_pipeline, VolumeResult};
use conevol::poly::Var::{M, Z};
use conevol::poly::Assignment;
use conevol::selftest::{check_entry, entry_config, Check};

const PREC: u32 = 256;

fn run(name: &str) -> (CensusEntry, VolumeResult, Duration) {
    let e = census_lookup(name).unwrap();
    let cfg = entry_config(&e, 0, PREC);
    let t = Instant::now();
    let r = run_pipeline(&e.a_poly, Some(&e.witness(PREC)), &cfg).unwrap_or_else(|err| panic!("{name}: {err}"));
    (e, r, t.elapsed())
}

fn verdict(criterion: u32, title: &str, checks: &[Check]) {
    let ok = checks.iter().all(|c| c.passed);
    let summary: Vec<String> = checks.iter().map(|c| format!("{}={}", c.name, if c.passed { "ok" } else { "FAIL" })).collect();
    println!("[{}] criterion {criterion}: {title} ({})", if ok { "PASS" } else { "FAIL" }, summary.join(", "));
    for c in checks.iter().filter(|c| !c.passed) {
        println!("    {}: {}", c.name, c.detail);
    }
    assert!(ok, "criterion {criterion} failed");
}

fn runtime_check(elapsed: Duration, budget_secs: u64) -> Check {
    Check {
        name: "runtime".into(),
        passed: elapsed < Duration::from_secs(budget_secs),
        detail: format!("{:.2}s, budget {budget_secs}s", elapsed.as_secs_f64()),
    }
}

fn census_criterion(criterion: u32, name: &str, budget_secs: u64, required: &[&str]) {
    let (e, r, elapsed) = run(name);
    let mut checks: Vec<Check> = check_entry(&e, &r).into_iter().filter(|c| c.name != "closure").collect();
    for want in required {
        if !checks.iter().any(|c| c.name == *want) {
            checks.push(Check { name: (*want).into(), passed: false, detail: "no expected value".into() });
        }
    }
    checks.push(runtime_check(elapsed, budget_secs));
    verdict(criterion, &format!("{name} at {PREC} bits in {:.2}s", elapsed.as_secs_f64()), &checks);
}

#[test]
fn criterion_1_figure_eight() {
    census_criterion(1, "4_1", 10, &["riley", "p", "q", "s", "f", "volume"]);
}

#[test]
fn criterion_2_three_twist() {
    census_criterion(2, "5_2", 60, &["f", "volume"]);
}

#[test]
fn criterion_3_m003() {
    census_criterion(3, "m003", 30, &["f", "volume"]);
}

#[test]
fn criterion_4_m017() {
    census_criterion(4, "m017", 120, &["f", "m0_minpoly", "volume", "alpha0"]);
}

#[test]
fn criterion_5_closure() {
    let mut checks = Vec::new();
    for name in ["4_1", "m003", "5_2", "m017"] {
        let (e, r, _) = run(name);
        let c = check_entry(&e, &r).into_iter().find(|c| c.name == "closure").unwrap();
        checks.push(Check { name: format!("{name} closure"), ..c });
        let pt = Assignment::from([(M, r.m0.clone()), (Z, r.z0.clone())]);
        let s_at = r.s_poly.evaluate(&pt).unwrap().abs().log2_abs();
        checks.push(Check {
            name: format!("{name} S(m0,z0)"),
            passed: s_at < -150.0,
            detail: format!("|S(m0, z0)| = 2^{s_at:.0}"),
        });
        if name == "4_1" {
            let three = BigFloat::from_i64(3, PREC);
            let want = ComplexBF::new(BigFloat::from_i64(36, PREC), &BigFloat::from_i64(12, PREC) * &three.sqrt());
            let err = (&r.z0 - &want).abs().log2_abs();
            checks.push(Check {
                name: "4_1 z0 = 36+12i*sqrt(3)".into(),
                passed: err < -200.0,
                detail: format!("|error| = 2^{err:.0}"),
            });
        }
    }
    verdict(5, "volume = 2i/(3 m0 z0) within 2^-200", &checks);
}

#[test]
fn criterion_6_property_suites() {
    type Suite = fn(u32, u64) -> Result<(), proptest::test_runner::TestError<String>>;
    let suites: [(&str, Suite); 6] = [
        ("resultant swap symmetry", common::resultant_swap_symmetry),
        ("resultant multiplicativity", common::resultant_multiplicativity),
        ("bareiss = prs", common::bareiss_equals_prs),
        ("factor roundtrip", common::factor_roundtrip),
        ("root residuals", common::root_residuals),
        ("q identity", common::q_identity),
    ];
    let t = Instant::now();
    let mut checks = Vec::new();
    for (name, suite) in suites {
        let t0 = Instant::now();
        let outcome = suite(common::CASES, common::SEED);
        checks.push(Check {
            name: name.into(),
            passed: outcome.is_ok(),
            detail: match outcome {
                Ok(()) => format!("{} cases in {:.2}s", common::CASES, t0.elapsed().as_secs_f64()),
                Err(e) => e.to_string(),
            },
        });
    }
    checks.push(runtime_check(t.elapsed(), 300));
    verdict(6, &format!("{} cases per suite, seed {:#x}", common::CASES, common::SEED), &checks);
}

#[test]
fn criterion_7_selftest_determinism() {
    let dir = std::env::temp_dir().join(format!("conevol-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut outputs = Vec::new();
    for k in 0..2 {
        let path = dir.join(format!("selftest-{k}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_conevol"))
            .args(["selftest", "--seed", "17", "--trace"])
            .arg(&path)
            .output()
            .unwrap();
        assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stdout));
        outputs.push(std::fs::read(&path).unwrap());
    }
    std::fs::remove_dir_all(&dir).ok();
    let checks = [
        Check { name: "non-empty".into(), passed: !outputs[0].is_empty(), detail: format!("{} bytes", outputs[0].len()) },
        Check { name: "byte-identical".into(), passed: outputs[0] == outputs[1], detail: "traces differ".into() },
    ];
    verdict(7, &format!("two selftest runs, {} bytes each", outputs[0].len()), &checks);
}
