//! Census regressions: run every census entry and compare with its expected
//! values.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::float::{BigFloat, ComplexBF};
use crate::io::census::{census_entries, CensusEntry, ExpectedPoly, ExpectedValue};
use crate::pipeline::{run_pipeline, PipelineConfig, PipelineTrace, VolumeResult};
use crate::poly::{IntPoly, Var};

/// Bits of agreement required between the volume and `2i / (3 m0 z0)`.
pub const CLOSURE_BITS: f64 = 200.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryReport {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub error: Option<String>,
    pub trace: Option<PipelineTrace>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub precision: u32,
    pub passed: bool,
    pub entries: Vec<EntryReport>,
}

/// `a = ±Mᵏ b` for some integer `k`.
pub fn same_up_to_sign_and_m_power(a: &IntPoly, b: &IntPoly) -> bool {
    let (ca, pa) = a.content_primitive();
    let (cb, pb) = b.content_primitive();
    let other_vars_agree = Var::ALL.iter().filter(|v| **v != Var::M).all(|v| ca.monomial.exp(*v) == cb.monomial.exp(*v));
    pa.iter().eq(pb.iter()) && ca.coeff.abs() == cb.coeff.abs() && other_vars_agree
}

/// `a = ±b`.
pub fn same_up_to_sign(a: &IntPoly, b: &IntPoly) -> bool {
    a.normal_sign().iter().eq(b.normal_sign().iter())
}

fn poly_check(name: &str, got: &IntPoly, want: &Option<ExpectedPoly>, up_to_m: bool) -> Option<Check> {
    let want = want.as_ref()?;
    let passed = if up_to_m { same_up_to_sign_and_m_power(got, &want.poly) } else { same_up_to_sign(got, &want.poly) };
    let detail = if passed { format!("{} terms agree", got.len()) } else { format!("got {got}") };
    Some(Check { name: name.into(), passed, detail })
}

/// Bits of agreement, `-log2 |a - b|`, capped at the working precision.
fn agreement_bits(a: &BigFloat, b: &BigFloat) -> f64 {
    let d = (a - b).log2_abs();
    if d.is_finite() {
        -d
    } else {
        a.prec() as f64
    }
}

fn value_check(name: &str, got: &BigFloat, want: &Option<ExpectedValue>) -> Option<Check> {
    let want = want.as_ref()?;
    let w = BigFloat::parse_decimal(want.value, got.prec()).expect("census decimal");
    let err = (got - &w).abs().to_f64();
    Some(Check {
        name: name.into(),
        passed: err < want.tolerance,
        detail: format!("|error| = {err:.3e}, tolerance {:.0e}", want.tolerance),
    })
}

fn closure_check(r: &VolumeResult) -> Check {
    let prec = r.precision;
    let three = ComplexBF::from_f64(3.0, 0.0, prec);
    let two_i = ComplexBF::from_f64(0.0, 2.0, prec);
    let v = &two_i / &(&(&three * &r.m0) * &r.z0);
    let bits = agreement_bits(&r.volume.re, &v.re).min(agreement_bits(&r.volume.im, &v.im));
    Check {
        name: "closure".into(),
        passed: bits > CLOSURE_BITS,
        detail: format!("agreement {:.0} bits, need {CLOSURE_BITS:.0}", bits.min(prec as f64)),
    }
}

/// All checks of one entry against a finished result.
pub fn check_entry(e: &CensusEntry, r: &VolumeResult) -> Vec<Check> {
    let x = &e.expected;
    let (m0_poly, alpha0) = match &r.halved {
        Some(h) => (&h.minpoly, &h.alpha0),
        None => (&r.m0_minpoly, &r.alpha0),
    };
    let mut out: Vec<Check> = [
        poly_check("riley", &r.riley, &x.riley, true),
        poly_check("p", &r.p_poly, &x.p, true),
        poly_check("q", &r.q_poly, &x.q, true),
        poly_check("s", &r.s_poly, &x.s, true),
        poly_check("f", &r.f_poly, &x.f, false),
        poly_check("m0_minpoly", m0_poly, &x.m0_minpoly, false),
        value_check("volume", &r.volume.re, &x.volume),
        value_check("alpha0", alpha0, &x.alpha0),
    ]
    .into_iter()
    .flatten()
    .collect();
    out.push(closure_check(r));
    out
}

pub fn entry_config(e: &CensusEntry, seed: u64, precision: u32) -> PipelineConfig {
    PipelineConfig {
        precision,
        seed,
        two_bridge: e.flags.two_bridge,
        angle_halving: e.flags.angle_halving,
        cross_check_resultants: true,
        ..PipelineConfig::default()
    }
}

pub fn run_entry(e: &CensusEntry, seed: u64, precision: u32) -> EntryReport {
    let cfg = entry_config(e, seed, precision);
    match run_pipeline(&e.a_poly, Some(&e.witness(precision)), &cfg) {
        Ok(r) => {
            let checks = check_entry(e, &r);
            EntryReport {
                name: e.name.into(),
                passed: checks.iter().all(|c| c.passed),
                checks,
                error: None,
                trace: Some(r.trace),
            }
        }
        Err(err) => EntryReport { name: e.name.into(), passed: false, checks: Vec::new(), error: Some(err.to_string()), trace: None },
    }
}

pub fn run_selftest(seed: u64, precision: u32) -> SelftestReport {
    let entries: Vec<EntryReport> = census_entries().iter().map(|e| run_entry(e, seed, precision)).collect();
    SelftestReport { seed, precision, passed: entries.iter().all(|e| e.passed), entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_poly_expr;
    use crate::poly::VarSet;
    use Var::{M, Z};

    #[test]
    fn normalisations() {
        let vs = VarSet::of(&[M, Z]);
        let a = parse_poly_expr("2*M^3*Z - 4*M^5", vs).unwrap();
        let b = parse_poly_expr("2*M^2 - Z", vs).unwrap();
        assert!(same_up_to_sign_and_m_power(&a, &b.scale(&(-2).into())));
        assert!(!same_up_to_sign_and_m_power(&a, &b));
        let z = crate::poly::Monomial::var(Z, 1);
        assert!(!same_up_to_sign_and_m_power(&b.mul_monomial(&z), &b));
        assert!(same_up_to_sign(&b, &-b.clone()));
        assert!(!same_up_to_sign(&a, &b));
    }
}
