//! Factorization over ℚ of univariate and bivariate integer polynomials, and
//! rationalization of Gaussian-integer polynomials.

mod bipoly;
mod bivariate;
mod finite;
mod gcd;
mod hensel;
mod univariate;
mod zpoly;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub use bipoly::BiPoly;
pub use gcd::{gcd_bivariate, gcd_univariate};
pub use hensel::mignotte_bound_bits;
pub use zpoly::ZPoly;

use crate::poly::{GaussPoly, IntPoly, Monomial, Var, VarSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("cannot factor the zero polynomial")]
    Zero,
    #[error("expected at most {expected} variables, found {found}")]
    TooManyVariables { expected: usize, found: VarSet },
    #[error("no admissible specialization for bivariate factoring of degree {deg}")]
    NoSpecialization { deg: u64 },
}

/// `unit · Π factor^mult`. Factors are normalized, primitive and, except in
/// squarefree decompositions, irreducible over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: BigInt,
    pub factors: Vec<(IntPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPoly {
        let mut acc = IntPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    pub fn polys(&self) -> Vec<IntPoly> {
        self.factors.iter().map(|(f, _)| f.clone()).collect()
    }

    fn sort(&mut self) {
        self.factors.sort_by(|(a, ma), (b, mb)| cmp_poly(a, b).then(ma.cmp(mb)));
    }

    /// Fix `unit` from leading coefficients: the graded-lex leading term of
    /// a product is the product of leading terms.
    fn settle_unit(&mut self, input: &IntPoly) {
        let mut lc = BigInt::one();
        for (f, m) in &self.factors {
            lc *= f.leading_coeff().pow(*m);
        }
        self.unit = input.leading_coeff() / lc;
    }
}

/// Total order used to list factors: by total degree, then by terms from
/// the leading one down.
pub fn cmp_poly(a: &IntPoly, b: &IntPoly) -> Ordering {
    a.total_degree()
        .cmp(&b.total_degree())
        .then_with(|| a.len().cmp(&b.len()))
        .then_with(|| {
            for ((ma, ca), (mb, cb)) in a.iter().rev().zip(b.iter().rev()) {
                let o = ma.cmp(mb).then_with(|| ca.cmp(cb));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
}

fn single_var(p: &IntPoly) -> Result<Option<Var>, FactorError> {
    let s = p.support();
    match s.len() {
        0 => Ok(None),
        1 => Ok(s.iter().next()),
        _ => Err(FactorError::TooManyVariables { expected: 1, found: s }),
    }
}

/// Squarefree decomposition of a univariate polynomial: pairwise coprime
/// squarefree parts, at most one per multiplicity.
pub fn squarefree_decomposition(p: &IntPoly) -> Result<Factorization, FactorError> {
    if p.is_zero() {
        return Err(FactorError::Zero);
    }
    let Some(v) = single_var(p)? else {
        return Ok(Factorization { unit: p.constant_term(), factors: Vec::new() });
    };
    let z = ZPoly::from_multi(p, v).expect("univariate");
    let (_, g) = z.content_primitive();
    let low = g.low_degree();
    let mut parts = univariate::yun(&g.shift_down(low));
    if low > 0 {
        let x = ZPoly::monomial(BigInt::one(), 1);
        match parts.iter_mut().find(|(_, m)| *m as usize == low) {
            Some((q, _)) => *q = &*q * &x,
            None => parts.push((x, low as u32)),
        }
    }
    let mut out = Factorization {
        unit: BigInt::zero(),
        factors: parts.into_iter().map(|(q, m)| (q.primitive().to_multi(v).with_vars(p.vars()), m)).collect(),
    };
    out.factors.sort_by_key(|(_, m)| *m);
    out.settle_unit(p);
    Ok(out)
}

/// Complete factorization of a polynomial in at most one variable.
pub fn factor_univariate(p: &IntPoly, seed: u64) -> Result<Factorization, FactorError> {
    if p.is_zero() {
        return Err(FactorError::Zero);
    }
    let Some(v) = single_var(p)? else {
        return Ok(Factorization { unit: p.constant_term(), factors: Vec::new() });
    };
    let z = ZPoly::from_multi(p, v).expect("univariate");
    let (unit, fs) = univariate::factor_zpoly(&z, seed);
    let mut out = Factorization {
        unit,
        factors: fs.into_iter().map(|(q, m)| (q.to_multi(v).with_vars(p.vars()), m)).collect(),
    };
    out.sort();
    Ok(out)
}

/// Complete factorization of a polynomial in at most two variables.
pub fn factor_bivariate(p: &IntPoly, seed: u64) -> Result<Factorization, FactorError> {
    if p.is_zero() {
        return Err(FactorError::Zero);
    }
    let s = p.support();
    if s.len() <= 1 {
        return factor_univariate(p, seed);
    }
    if s.len() > 2 {
        return Err(FactorError::TooManyVariables { expected: 2, found: s });
    }
    let vs: Vec<Var> = s.iter().collect();
    // main variable: the one of smaller degree
    let (x, y) = if p.degree(vs[0]) < p.degree(vs[1]) { (vs[1], vs[0]) } else { (vs[0], vs[1]) };
    let vars = p.vars();
    let (content, prim) = p.content_primitive();
    let mut factors: Vec<(IntPoly, u32)> = Vec::new();
    for v in [x, y] {
        let e = content.monomial.exp(v);
        if e > 0 {
            factors.push((IntPoly::term(BigInt::one(), Monomial::var(v, 1)).with_vars(vars), e));
        }
    }
    let mut b = BiPoly::from_multi(&prim, x, y);
    let cy = b.content_y();
    b = b.div_zpoly_exact(&cy).expect("content divides");
    let cx = b.transpose().content_y();
    b = b.transpose().div_zpoly_exact(&cx).expect("content divides").transpose();
    for (c, v) in [(cy, x), (cx, y)] {
        let (_, fs) = univariate::factor_zpoly(&c, seed);
        factors.extend(fs.into_iter().map(|(q, m)| (q.to_multi(v).with_vars(vars), m)));
    }
    for (part, mult) in univariate::yun(&b) {
        let irreducibles = match bivariate::factor_squarefree(&part, seed) {
            Some(fs) => fs,
            None if part.to_multi(x, y).total_degree() <= 8 => bivariate::kronecker(&part, seed),
            None => return Err(FactorError::NoSpecialization { deg: part.to_multi(x, y).total_degree() }),
        };
        for q in irreducibles {
            factors.push((q.to_multi(x, y).with_vars(vars).normal_sign(), mult));
        }
    }
    let mut out = Factorization { unit: BigInt::zero(), factors };
    out.sort();
    out.settle_unit(p);
    Ok(out)
}

/// Dispatch on the number of variables.
pub fn factor(p: &IntPoly, seed: u64) -> Result<Factorization, FactorError> {
    factor_bivariate(p, seed)
}

/// Kronecker-substitution factorization of a bivariate polynomial, used as
/// an independent cross-check on small inputs. Factors are returned without
/// multiplicity grouping.
pub fn factor_kronecker(p: &IntPoly, x: Var, y: Var, seed: u64) -> Vec<IntPoly> {
    let (_, prim) = p.content_primitive();
    let b = BiPoly::from_multi(&prim, x, y);
    bivariate::kronecker(&b, seed).into_iter().map(|q| q.to_multi(x, y).normal_sign()).collect()
}

/// `p · conj(p)` with the integer content removed and positive leading
/// coefficient. Every real factor of `p` divides the result.
pub fn rationalize_gaussian(p: &GaussPoly) -> IntPoly {
    let q = (p * &p.conj()).to_int().expect("a polynomial times its conjugate is real");
    let mut g = BigInt::zero();
    for (_, c) in q.iter() {
        g = num_integer::Integer::gcd(&g, c);
    }
    if g.is_zero() {
        return q;
    }
    q.div_exact_scalar(&g).expect("content divides").normal_sign()
}
