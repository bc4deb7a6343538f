//! JSON forms of polynomials and complex numbers.
//!
//! A polynomial is `{"vars": [...], "ring": "Z" | "Z[i]", "terms": [[exps,
//! coef], ...]}` with exponents listed in the order of `vars` (the fixed
//! variable order) and coefficients as decimal strings, or `[re, im]` string
//! pairs over ℤ[i]. Terms run from the leading monomial down.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{Coeff, GaussInt, Ring};
use crate::float::{BigFloat, ComplexBF};
use crate::poly::{GaussPoly, IntPoly, Monomial, MultiPoly, Var, VarSet, NVARS};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Int(String),
    Gauss([String; 2]),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<Var>,
    pub ring: Ring,
    pub terms: Vec<(Vec<u32>, CoeffJson)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JsonError {
    #[error("term has {found} exponents for {expected} variables")]
    Arity { expected: usize, found: usize },
    #[error("bad integer coefficient '{0}'")]
    BadInteger(String),
    #[error("coefficient does not match ring {0}")]
    RingMismatch(Ring),
}

fn coeff_json<C: Coeff>(c: &C) -> CoeffJson {
    match C::RING {
        Ring::Integers => CoeffJson::Int(c.real_part().to_string()),
        Ring::Gaussian => CoeffJson::Gauss([c.real_part().to_string(), c.imag_part().to_string()]),
    }
}

pub fn poly_to_json<C: Coeff>(p: &MultiPoly<C>) -> PolyJson {
    let vars: Vec<Var> = p.vars().iter().collect();
    let terms = p
        .iter()
        .rev()
        .map(|(m, c)| (vars.iter().map(|v| m.exp(*v)).collect(), coeff_json(c)))
        .collect();
    PolyJson { vars, ring: C::RING, terms }
}

fn parse_int(s: &str) -> Result<BigInt, JsonError> {
    s.parse().map_err(|_| JsonError::BadInteger(s.to_string()))
}

pub fn poly_from_json<C: Coeff>(j: &PolyJson) -> Result<MultiPoly<C>, JsonError> {
    if j.ring != C::RING {
        return Err(JsonError::RingMismatch(C::RING));
    }
    let mut terms = Vec::with_capacity(j.terms.len());
    for (exps, c) in &j.terms {
        if exps.len() != j.vars.len() {
            return Err(JsonError::Arity { expected: j.vars.len(), found: exps.len() });
        }
        let mut e = [0u32; NVARS];
        for (v, k) in j.vars.iter().zip(exps) {
            e[v.index()] = *k;
        }
        let coef = match c {
            CoeffJson::Int(s) => C::from_parts(parse_int(s)?, BigInt::default()),
            CoeffJson::Gauss([re, im]) => C::from_parts(parse_int(re)?, parse_int(im)?),
        }
        .ok_or(JsonError::RingMismatch(C::RING))?;
        terms.push((Monomial::from_exps(e), coef));
    }
    Ok(MultiPoly::from_terms(terms).with_vars(VarSet::of(&j.vars)))
}

pub fn int_poly_from_json(j: &PolyJson) -> Result<IntPoly, JsonError> {
    poly_from_json::<BigInt>(j)
}

pub fn gauss_poly_from_json(j: &PolyJson) -> Result<GaussPoly, JsonError> {
    poly_from_json::<GaussInt>(j)
}

/// Complex number as a `[re, im]` pair of decimal strings.
pub fn complex_to_json(z: &ComplexBF) -> [String; 2] {
    let (re, im) = z.to_strings();
    [re, im]
}

pub fn real_to_json(x: &BigFloat) -> String {
    x.to_sci_string(BigFloat::decimal_digits(x.prec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var::{M, V, W};

    #[test]
    fn roundtrip_integer_and_gaussian() {
        let p = &(&IntPoly::var(M).pow(3) * &IntPoly::var(W)) - &IntPoly::from_i64(7);
        let j = poly_to_json(&p);
        assert_eq!(j.vars, vec![M, W]);
        assert_eq!(j.terms[0], (vec![3, 1], CoeffJson::Int("1".into())));
        assert_eq!(int_poly_from_json(&j).unwrap(), p);
        let g = &GaussPoly::var(V).scale(&GaussInt::new(3, -2)) + &GaussPoly::constant(GaussInt::i());
        let j = poly_to_json(&g);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains(r#"["3","-2"]"#));
        let back: PolyJson = serde_json::from_str(&text).unwrap();
        assert_eq!(gauss_poly_from_json(&back).unwrap(), g);
        assert!(int_poly_from_json(&back).is_err());
    }
}
