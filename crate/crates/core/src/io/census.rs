//! Embedded census of worked examples: A-polynomials, witnesses on the
//! excellent component and expected results.
//!
//! Witnesses were obtained by continuing the Riley variety numerically from
//! `M = exp(i(α₀ - 0.1)/2)` and are given to 45 significant digits.

use serde::Serialize;
use thiserror::Error;

use crate::float::{BigFloat, ComplexBF};
use crate::io::parse_poly_expr;
use crate::pipeline::{APolynomial, GeometricWitness};
use crate::poly::{IntPoly, Var, VarSet};

use Var::{L, M, V, W, Y, Z};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Transcribed from a published display.
    Published,
    /// Computed independently and frozen.
    Computed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpectedPoly {
    pub poly: IntPoly,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpectedValue {
    pub value: &'static str,
    pub tolerance: f64,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Expected {
    pub riley: Option<ExpectedPoly>,
    pub p: Option<ExpectedPoly>,
    pub q: Option<ExpectedPoly>,
    pub s: Option<ExpectedPoly>,
    pub f: Option<ExpectedPoly>,
    /// For entries with angle halving, the minimal polynomial of the
    /// half-angle `M₀`.
    pub m0_minpoly: Option<ExpectedPoly>,
    pub volume: Option<ExpectedValue>,
    pub alpha0: Option<ExpectedValue>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CensusFlags {
    pub two_bridge: bool,
    pub angle_halving: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CensusEntry {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub a_poly: APolynomial,
    pub witness_m: [&'static str; 2],
    pub witness_w: &'static str,
    pub expected: Expected,
    pub flags: CensusFlags,
}

impl CensusEntry {
    /// The stored witness at `prec` bits.
    pub fn witness(&self, prec: u32) -> GeometricWitness {
        let f = |s: &str| BigFloat::parse_decimal(s, prec).expect("census decimal");
        GeometricWitness {
            m: ComplexBF::new(f(self.witness_m[0]), f(self.witness_m[1])),
            w: ComplexBF::real(f(self.witness_w)),
            volume_hint: None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown census entry '{name}'; available: {}", available.join(", "))]
pub struct UnknownEntry {
    pub name: String,
    pub available: Vec<&'static str>,
}

struct Raw {
    name: &'static str,
    aliases: &'static [&'static str],
    source: &'static str,
    a: &'static str,
    witness_m: [&'static str; 2],
    witness_w: &'static str,
    flags: CensusFlags,
}

const RAW: [Raw; 4] = [
    Raw {
        name: "4_1",
        aliases: &[],
        source: "KnotInfo A-polynomial of the figure-eight knot",
        a: "M^4 + L*(-M^8 + M^6 + 2*M^4 + M^2 - 1) + L^2*M^4",
        witness_m: ["0.542658360445933130968440837634458538673269121", "0.839953512903024721172718521974662723795902724"],
        witness_w: "4.01111904502001730312431823095742825654793708",
        flags: CensusFlags { two_bridge: true, angle_halving: false },
    },
    Raw {
        name: "m003",
        aliases: &[],
        source: "A-polynomial of the census manifold m003",
        a: "M^3 + L^2*(1 - M - 2*M^2 - M^3 + M^4) + L^4*M",
        witness_m: ["-0.456091899949033115594429973522062556285711141", "0.889932682173703049967583522820153063178593289"],
        witness_w: "1.64948829792718258032236065395868469924415609",
        flags: CensusFlags { two_bridge: false, angle_halving: false },
    },
    Raw {
        name: "5_2",
        aliases: &[],
        source: "KnotInfo A-polynomial of the three-twist knot",
        a: "1 + L*(-1 + 2*M^2 + 2*M^4 - M^8 + M^10) + L^2*(M^4 - M^6 + 2*M^10 + 2*M^12 - M^14) + L^3*M^14",
        witness_m: ["0.405212649410535644232152751439353237752233854", "0.914222461306707519145565276014207573892404966"],
        witness_w: "5.84546986651601137190142359615736785385347679",
        flags: CensusFlags { two_bridge: true, angle_halving: false },
    },
    Raw {
        name: "m017",
        aliases: &["m016"],
        source: "A-polynomial shared by the census manifolds m016 and m017",
        a: "-M^5 + L^2*(M - M^2 + 2*M^4 + 2*M^5 - M^6) + L^4*(1 - 2*M - 2*M^2 + M^4 - M^5) + L^6*M",
        witness_m: ["-0.707796102520767305966787356544258510371920632", "0.70641678721305275709617520094407943410703734"],
        witness_w: "1.88966090066647673347077087108565089861455688",
        flags: CensusFlags { two_bridge: false, angle_halving: true },
    },
];

const RILEY_4_1: &str = "-M^8 + (1 - 2*M^2 - 3*M^4 + 2*M^6 + 6*M^8 + 2*M^10 - 3*M^12 - 2*M^14 + M^16)*W - M^8*W^2";

const P_4_1: &str = "1 - 4*M^2 - 2*M^4 + 16*M^6 + 9*M^8 - 24*M^10 - 34*M^12 + 12*M^14 + 52*M^16
    + 12*M^18 - 34*M^20 - 24*M^22 + 9*M^24 + 16*M^26 - 2*M^28 - 4*M^30 + M^32
    + (-1 + 4*M^2 + 2*M^4 - 16*M^6 - 11*M^8 + 28*M^10 + 40*M^12 - 16*M^14 - 60*M^16 - 16*M^18
    + 40*M^20 + 28*M^22 - 11*M^24 - 16*M^26 + 2*M^28 + 4*M^30 - M^32)*Y + M^16*Y^2";

const Q_4_1: &str = "-8*M - 8*M^3 + 96*M^5 + 72*M^7 - 240*M^9 - 408*M^11 + 168*M^13
    + 832*M^15 + 216*M^17 - 680*M^19 - 528*M^21 + 216*M^23 + 416*M^25 - 56*M^27 - 120*M^29
    + 32*M^31 + (8*M + 8*M^3 - 96*M^5 - 88*M^7 + 280*M^9 + 480*M^11 - 224*M^13 - 960*M^15
    - 288*M^17 + 800*M^19 + 616*M^21 - 264*M^23 - 416*M^25 + 56*M^27 + 120*M^29 - 32*M^31)*Y
    + 16*M^15*Y^2 + (-1 + 4*M^2 + 2*M^4 - 16*M^6 - 11*M^8 + 28*M^10 + 40*M^12 - 16*M^14 - 60*M^16
    - 16*M^18 + 40*M^20 + 28*M^22 - 11*M^24 - 16*M^26 + 2*M^28 + 4*M^30 - M^32)*Z + 2*M^16*Y*Z";

const S_4_1: &str = "-256*M^7 + 256*M^9 - 64*M^11 - 256*M^13 + 640*M^15 - 256*M^17 - 64*M^19
    + 256*M^21 - 256*M^23 + (-16 + 56*M^2 + 24*M^4 - 160*M^6 - 88*M^8 + 168*M^10 + 160*M^12
    - 32*M^14 + 32*M^18 - 160*M^20 - 168*M^22 + 88*M^24 + 160*M^26 - 24*M^28 - 56*M^30
    + 16*M^32)*Z - M^17*Z^2";

fn expect(text: &str, vars: &[Var], provenance: Provenance) -> Option<ExpectedPoly> {
    let poly = parse_poly_expr(text, VarSet::of(vars)).expect("census polynomial parses");
    Some(ExpectedPoly { poly, provenance })
}

fn value(value: &'static str, tolerance: f64, provenance: Provenance) -> Option<ExpectedValue> {
    Some(ExpectedValue { value, tolerance, provenance })
}

fn expected(name: &str) -> Expected {
    use Provenance::{Computed, Published};
    match name {
        "4_1" => Expected {
            riley: expect(RILEY_4_1, &[M, W], Published),
            p: expect(P_4_1, &[M, Y], Published),
            q: expect(Q_4_1, &[M, Y, Z], Published),
            s: expect(S_4_1, &[M, Z], Published),
            f: expect("3888*V^2 - 1", &[V], Computed),
            m0_minpoly: expect("M^2 - M + 1", &[M], Computed),
            // √3/108
            volume: value("0.016037507477489604569698577236165484879100048646392413222739", 1e-30, Computed),
            alpha0: None,
        },
        "m003" => Expected {
            f: expect("243*V^2 - 4", &[V], Computed),
            m0_minpoly: expect("M^2 + M + 1", &[M], Computed),
            // 2√3/27
            volume: value("0.128300059819916836557588617889323879032800389171139305781912", 1e-30, Published),
            ..Expected::default()
        },
        "5_2" => Expected {
            f: expect(
                "785065068490752*V^8 + 412091172864*V^6 + 64457856*V^4 - 864*V^2 - 1",
                &[V],
                Published,
            ),
            volume: value("0.009909630999945638", 1e-12, Published),
            ..Expected::default()
        },
        "m017" => Expected {
            f: expect(
                "191666276487*V^8 + 6438924576*V^6 + 64457856*V^4 - 55296*V^2 - 4096",
                &[V],
                Published,
            ),
            m0_minpoly: expect(
                "1 - 2*M - M^2 + 8*M^3 - 11*M^4 + 8*M^5 - M^6 - 2*M^7 + M^8",
                &[M],
                Published,
            ),
            volume: value("0.0792770479995651", 1e-12, Published),
            alpha0: value("2.4071698135544546", 1e-10, Published),
            ..Expected::default()
        },
        _ => Expected::default(),
    }
}

fn build(raw: &Raw) -> CensusEntry {
    let poly = parse_poly_expr(raw.a, VarSet::of(&[M, L])).expect("census A-polynomial parses");
    CensusEntry {
        name: raw.name,
        aliases: raw.aliases,
        a_poly: APolynomial::new(poly, Some(raw.name.to_string()), raw.source).expect("census A-polynomial is valid"),
        witness_m: raw.witness_m,
        witness_w: raw.witness_w,
        expected: expected(raw.name),
        flags: raw.flags,
    }
}

/// Primary names followed by aliases.
pub fn census_names() -> Vec<&'static str> {
    let mut out: Vec<&'static str> = RAW.iter().map(|r| r.name).collect();
    out.extend(RAW.iter().flat_map(|r| r.aliases.iter().copied()));
    out
}

pub fn census_lookup(name: &str) -> Result<CensusEntry, UnknownEntry> {
    RAW.iter()
        .find(|r| r.name == name || r.aliases.contains(&name))
        .map(build)
        .ok_or_else(|| UnknownEntry { name: name.to_string(), available: census_names() })
}

/// Every entry once, in census order.
pub fn census_entries() -> Vec<CensusEntry> {
    RAW.iter().map(build).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::PipelineConfig;

    #[test]
    fn lookup_and_aliases() {
        let e = census_lookup("4_1").unwrap();
        assert!(e.flags.two_bridge);
        assert_eq!(e.expected.riley.as_ref().unwrap().provenance, Provenance::Published);
        assert_eq!(census_lookup("m016").unwrap().name, "m017");
        let err = census_lookup("6_1").unwrap_err();
        assert!(err.to_string().contains("m003"));
        assert_eq!(census_names(), vec!["4_1", "m003", "5_2", "m017", "m016"]);
    }

    #[test]
    fn witnesses_are_valid() {
        let cfg = PipelineConfig::default();
        for e in census_entries() {
            e.witness(cfg.precision).validate(&cfg).unwrap();
        }
    }

    #[test]
    fn displayed_q_is_the_implicit_derivative() {
        let e = census_lookup("4_1").unwrap();
        let p = e.expected.p.unwrap().poly;
        let q = e.expected.q.unwrap().poly;
        assert_eq!(crate::pipeline::implicit_derivative_poly(&p), q);
    }
}
