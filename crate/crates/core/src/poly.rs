//! Sparse multivariate polynomials over ℤ and ℤ[i] in the fixed variable set
//! `M < L < Lbar < W < X < Y < Z < V`.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors under graded-lex
//! order, so the canonical form of a polynomial is its term map and the
//! leading term is the last entry.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use crate::coeff::{Coeff, GaussInt, Ring};
use crate::float::ComplexBF;

pub const NVARS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    M,
    L,
    Lbar,
    W,
    X,
    Y,
    Z,
    V,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::M, Var::L, Var::Lbar, Var::W, Var::X, Var::Y, Var::Z, Var::V];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::M => "M",
            Var::L => "L",
            Var::Lbar => "Lbar",
            Var::W => "W",
            Var::X => "X",
            Var::Y => "Y",
            Var::Z => "Z",
            Var::V => "V",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == s)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Set of variables as a bitmask over [`Var::ALL`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct VarSet(u8);

impl VarSet {
    pub fn empty() -> Self {
        VarSet(0)
    }

    pub fn all() -> Self {
        VarSet(0xff)
    }

    pub fn of(vars: &[Var]) -> Self {
        vars.iter().fold(VarSet(0), |s, v| s.with(*v))
    }

    pub fn contains(self, v: Var) -> bool {
        self.0 & (1 << v.index()) != 0
    }

    pub fn with(self, v: Var) -> Self {
        VarSet(self.0 | (1 << v.index()))
    }

    pub fn without(self, v: Var) -> Self {
        VarSet(self.0 & !(1 << v.index()))
    }

    pub fn union(self, o: Self) -> Self {
        VarSet(self.0 | o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Var> {
        Var::ALL.into_iter().filter(move |v| self.contains(*v))
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.iter().map(Var::name).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

/// Exponent vector indexed by [`Var::index`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u32; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var, e: u32) -> Self {
        let mut m = Monomial::one();
        m.0[v.index()] = e;
        m
    }

    pub fn from_exps(exps: [u32; NVARS]) -> Self {
        Monomial(exps)
    }

    pub fn exps(&self) -> &[u32; NVARS] {
        &self.0
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn set(&mut self, v: Var, e: u32) {
        self.0[v.index()] = e;
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> VarSet {
        Var::ALL.iter().fold(VarSet::empty(), |s, &v| if self.exp(v) > 0 { s.with(v) } else { s })
    }

    pub fn times(&self, o: &Self) -> Self {
        let mut r = *self;
        for i in 0..NVARS {
            r.0[i] += o.0[i];
        }
        r
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        let mut r = *self;
        for i in 0..NVARS {
            r.0[i] = self.0[i].checked_sub(o.0[i])?;
        }
        Some(r)
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut r = *self;
        for i in 0..NVARS {
            r.0[i] = self.0[i].min(o.0[i]);
        }
        r
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.total_degree().cmp(&o.total_degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable {0} has no value in the evaluation point")]
    MissingVariable(Var),
}

/// Point for numeric evaluation.
pub type Assignment = BTreeMap<Var, ComplexBF>;

/// Sign, content and monomial factor split off by [`MultiPoly::content_primitive`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Content<C: Coeff> {
    pub coeff: C,
    pub monomial: Monomial,
}

impl<C: Coeff> Content<C> {
    pub fn to_poly(&self, vars: VarSet) -> MultiPoly<C> {
        MultiPoly::term(self.coeff.clone(), self.monomial).with_vars(vars)
    }
}

#[derive(Clone)]
pub struct MultiPoly<C: Coeff = BigInt> {
    terms: BTreeMap<Monomial, C>,
    vars: VarSet,
}

pub type IntPoly = MultiPoly<BigInt>;
pub type GaussPoly = MultiPoly<GaussInt>;

impl<C: Coeff> PartialEq for MultiPoly<C> {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

impl<C: Coeff> Eq for MultiPoly<C> {}

impl<C: Coeff> Default for MultiPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new(), vars: VarSet::empty() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(C::from_int(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Self {
        Self::term(C::one(), Monomial::var(v, 1))
    }

    pub fn term(c: C, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        let vars = m.support();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms, vars }
    }

    /// Sum of terms; repeated monomials are combined.
    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut terms: BTreeMap<Monomial, C> = BTreeMap::new();
        let mut vars = VarSet::empty();
        for (m, c) in it {
            vars = vars.union(m.support());
            add_term(&mut terms, m, &c);
        }
        MultiPoly { terms, vars }
    }

    /// Build from a dense coefficient list, index = power of `v`.
    pub fn univariate(v: Var, coeffs: &[C]) -> Self {
        let p = Self::from_terms(
            coeffs.iter().enumerate().map(|(k, c)| (Monomial::var(v, k as u32), c.clone())),
        );
        p.with_vars(VarSet::of(&[v]))
    }

    /// Declare additional variables.
    pub fn with_vars(mut self, vars: VarSet) -> Self {
        self.vars = self.vars.union(vars);
        self
    }

    /// Declared variables (a superset of the support).
    pub fn vars(&self) -> VarSet {
        self.vars
    }

    /// Variables that actually occur.
    pub fn support(&self) -> VarSet {
        self.terms.keys().fold(VarSet::empty(), |s, m| s.union(m.support()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> C {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> C {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(C::zero)
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).min().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// Coefficients with respect to `v`, index = power of `v`.
    pub fn coeffs_in(&self, v: Var) -> Vec<Self> {
        if self.is_zero() {
            return Vec::new();
        }
        let d = self.degree(v) as usize;
        let mut out: Vec<BTreeMap<Monomial, C>> = vec![BTreeMap::new(); d + 1];
        for (m, c) in &self.terms {
            let k = m.exp(v) as usize;
            let mut mm = *m;
            mm.set(v, 0);
            out[k].insert(mm, c.clone());
        }
        let vars = self.vars.without(v);
        out.into_iter().map(|terms| MultiPoly { terms, vars }).collect()
    }

    /// Inverse of [`MultiPoly::coeffs_in`].
    pub fn from_coeffs_in(v: Var, coeffs: &[Self]) -> Self {
        let mut terms = BTreeMap::new();
        let mut vars = VarSet::of(&[v]);
        for (k, c) in coeffs.iter().enumerate() {
            vars = vars.union(c.vars);
            for (m, a) in &c.terms {
                let mut mm = *m;
                mm.set(v, m.exp(v) + k as u32);
                add_term(&mut terms, mm, a);
            }
        }
        MultiPoly { terms, vars }
    }

    /// Dense coefficient list if the support is within `{v}`.
    pub fn univariate_coeffs(&self, v: Var) -> Option<Vec<C>> {
        if !self.support().is_subset(VarSet::of(&[v])) {
            return None;
        }
        let mut out = vec![C::zero(); self.degree(v) as usize + 1];
        for (m, c) in &self.terms {
            out[m.exp(v) as usize] = c.clone();
        }
        Some(out)
    }

    /// Coefficient of `v^k` as a polynomial in the other variables.
    pub fn coeff_in(&self, v: Var, k: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(v) == k)
            .map(|(m, c)| {
                let mut mm = *m;
                mm.set(v, 0);
                (mm, c.clone())
            })
            .collect();
        MultiPoly { terms, vars: self.vars.without(v) }
    }

    pub fn derivative(&self, v: Var) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.exp(v) > 0).map(|(m, c)| {
            let e = m.exp(v);
            let mut mm = *m;
            mm.set(v, e - 1);
            (mm, c.times(&C::from_int(BigInt::from(e))))
        });
        Self::from_terms(terms).with_vars(self.vars)
    }

    /// `v^(deg_v p) * p(v -> 1/v)`.
    pub fn reverse_in(&self, v: Var) -> Self {
        let d = self.degree(v);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut mm = *m;
            mm.set(v, d - m.exp(v));
            (mm, c.clone())
        });
        Self::from_terms(terms).with_vars(self.vars)
    }

    /// Replace variable `from` by `to`. Exponents add if `to` already occurs.
    pub fn rename(&self, from: Var, to: Var) -> Self {
        if from == to {
            return self.clone();
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut mm = *m;
            mm.set(to, m.exp(to) + m.exp(from));
            mm.set(from, 0);
            (mm, c.clone())
        });
        let vars = if self.vars.contains(from) { self.vars.without(from).with(to) } else { self.vars };
        Self::from_terms(terms).with_vars(vars)
    }

    /// Substitute `v = value`.
    pub fn eval_at(&self, v: Var, value: &C) -> Self {
        let d = self.degree(v) as usize;
        let mut pows = vec![C::one()];
        for k in 1..=d {
            let next = pows[k - 1].times(value);
            pows.push(next);
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut mm = *m;
            mm.set(v, 0);
            (mm, c.times(&pows[m.exp(v) as usize]))
        });
        Self::from_terms(terms).with_vars(self.vars.without(v))
    }

    /// Substitute the polynomial `q` for `v` (Horner in `v`).
    pub fn compose(&self, v: Var, q: &Self) -> Self {
        let cs = self.coeffs_in(v);
        let mut acc = Self::zero();
        for c in cs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        acc.with_vars(self.vars.without(v).union(q.vars))
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero().with_vars(self.vars);
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.times(k))).collect(),
            vars: self.vars,
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.times(mono), c.clone())).collect(),
            vars: self.vars.union(mono.support()),
        }
    }

    pub fn div_exact_scalar(&self, k: &C) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(*m, c.div_exact(k)?);
        }
        Some(MultiPoly { terms, vars: self.vars })
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dm, dc) = d.leading()?;
        let (dm, dc) = (*dm, dc.clone());
        if d.len() == 1 {
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                terms.insert(m.div(&dm)?, c.div_exact(&dc)?);
            }
            return Some(MultiPoly { terms, vars: self.vars.union(d.vars) });
        }
        let mut rem = self.terms.clone();
        let mut q: BTreeMap<Monomial, C> = BTreeMap::new();
        while let Some((lm, lc)) = rem.iter().next_back() {
            let qm = lm.div(&dm)?;
            let qc = lc.div_exact(&dc)?;
            let neg = qc.negated();
            for (m, c) in &d.terms {
                add_term_mul(&mut rem, m.times(&qm), c, &neg);
            }
            q.insert(qm, qc);
        }
        Some(MultiPoly { terms: q, vars: self.vars.union(d.vars) })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one().with_vars(self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Split `p = content * primitive` where `primitive` has normal leading
    /// coefficient, coefficient gcd 1 and no monomial factor.
    pub fn content_primitive(&self) -> (Content<C>, Self) {
        if self.is_zero() {
            return (Content { coeff: C::zero(), monomial: Monomial::one() }, self.clone());
        }
        let mut g = C::zero();
        let mut mono: Option<Monomial> = None;
        for (m, c) in &self.terms {
            g = g.gcd(c);
            mono = Some(match mono {
                None => *m,
                Some(x) => x.gcd(m),
            });
        }
        let mono = mono.unwrap_or_else(Monomial::one);
        let lead = self.leading_coeff();
        let unit = lead.div_exact(&g).expect("content divides").normal_unit();
        // content = g / unit; units are their own inverse up to conjugation
        let content = g.div_exact(&unit).expect("unit divides");
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.div(&mono).expect("monomial content"), c.div_exact(&content).expect("content"));
        }
        (Content { coeff: content, monomial: mono }, MultiPoly { terms, vars: self.vars })
    }

    pub fn primitive(&self) -> Self {
        self.content_primitive().1
    }

    pub fn is_normalized(&self) -> bool {
        !self.is_zero() && self.content_primitive().1 == *self
    }

    /// Multiply by the unit that makes the leading coefficient normal.
    pub fn normal_sign(&self) -> Self {
        let u = self.leading_coeff().normal_unit();
        if u.is_one() {
            self.clone()
        } else {
            self.scale(&u)
        }
    }

    /// Sum of `|re| + |im|` over all coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.terms.values().map(C::l1).sum()
    }

    /// Largest coefficient magnitude in bits.
    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.values().map(|c| c.l1().bits()).max().unwrap_or(0)
    }

    pub fn conj(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect(),
            vars: self.vars,
        }
    }

    /// Numeric value at a point. Working precision is the largest precision
    /// among the assigned values.
    pub fn evaluate(&self, pt: &Assignment) -> Result<ComplexBF, PolyError> {
        let support = self.support();
        for v in support.iter() {
            if !pt.contains_key(&v) {
                return Err(PolyError::MissingVariable(v));
            }
        }
        let prec = pt.values().map(ComplexBF::prec).max().unwrap_or(64);
        // Horner in the first variable, recursing on the rest
        Ok(self.horner(&support.iter().collect::<Vec<_>>(), pt, prec))
    }

    fn horner(&self, order: &[Var], pt: &Assignment, prec: u32) -> ComplexBF {
        match order.split_first() {
            None => self.constant_term().to_complex(prec),
            Some((&v, rest)) => {
                let x = &pt[&v];
                let cs = self.coeffs_in(v);
                let mut acc = ComplexBF::zero(prec);
                for c in cs.iter().rev() {
                    acc = &(&acc * x) + &c.horner(rest, pt, prec);
                }
                acc
            }
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c)))).with_vars(self.vars)
    }

    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let text = c.to_string();
            let (neg, body) = match text.strip_prefix('-') {
                Some(b) if !text.starts_with("-(") => (true, b.to_string()),
                _ => (false, text),
            };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&body)?;
            } else if body == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{body}*{m}")?;
            }
        }
        Ok(())
    }
}

impl IntPoly {
    pub fn to_gauss(&self) -> GaussPoly {
        self.map_coeffs(|c| GaussInt::from(c.clone()))
    }

    /// Coefficient gcd is one.
    pub fn is_primitive_integer(&self) -> bool {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = num_integer::Integer::gcd(&g, c);
        }
        g == BigInt::from(1)
    }

    pub fn leading_is_positive(&self) -> bool {
        self.leading_coeff().is_positive()
    }
}

impl GaussPoly {
    /// Real polynomial when every imaginary part vanishes.
    pub fn to_int(&self) -> Option<IntPoly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if !c.im.is_zero() {
                return None;
            }
            terms.insert(*m, c.re.clone());
        }
        Some(MultiPoly { terms, vars: self.vars })
    }
}

fn add_term<C: Coeff>(terms: &mut BTreeMap<Monomial, C>, m: Monomial, c: &C) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            e.get_mut().add_assign(c);
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn add_term_mul<C: Coeff>(terms: &mut BTreeMap<Monomial, C>, m: Monomial, a: &C, b: &C) {
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            let v = a.times(b);
            if !v.is_zero() {
                e.insert(v);
            }
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            e.get_mut().add_mul_assign(a, b);
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

impl<C: Coeff> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

impl<'a, C: Coeff> Add<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, o: &'a MultiPoly<C>) -> MultiPoly<C> {
        let (big, small) = if self.len() >= o.len() { (self, o) } else { (o, self) };
        let mut terms = big.terms.clone();
        for (m, c) in &small.terms {
            add_term(&mut terms, *m, c);
        }
        MultiPoly { terms, vars: self.vars.union(o.vars) }
    }
}

impl<'a, C: Coeff> Sub<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, o: &'a MultiPoly<C>) -> MultiPoly<C> {
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            add_term(&mut terms, *m, &c.negated());
        }
        MultiPoly { terms, vars: self.vars.union(o.vars) }
    }
}

impl<'a, C: Coeff> Mul<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, o: &'a MultiPoly<C>) -> MultiPoly<C> {
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                add_term_mul(&mut terms, m1.times(m2), c1, c2);
            }
        }
        MultiPoly { terms, vars: self.vars.union(o.vars) }
    }
}

impl<C: Coeff> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.negated())).collect(),
            vars: self.vars,
        }
    }
}

macro_rules! poly_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr<MultiPoly<C>> for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $m(self, o: MultiPoly<C>) -> MultiPoly<C> {
                (&self).$m(&o)
            }
        }
    };
}
poly_owned!(Add, add);
poly_owned!(Sub, sub);
poly_owned!(Mul, mul);

impl<C: Coeff> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::float::BigFloat;

    fn v(x: Var) -> IntPoly {
        IntPoly::var(x)
    }

    fn c(n: i64) -> IntPoly {
        IntPoly::from_i64(n)
    }

    fn four_one() -> IntPoly {
        // M^4 + L*(-M^8 + M^6 + 2*M^4 + M^2 - 1) + L^2*M^4
        let m = v(Var::M);
        let l = v(Var::L);
        let inner = &(&(&(&(-&m.pow(8)) + &m.pow(6)) + &(&c(2) * &m.pow(4))) + &m.pow(2)) - &c(1);
        &(&m.pow(4) + &(&l * &inner)) + &(&l.pow(2) * &m.pow(4))
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial::var(Var::M, 2);
        let b = Monomial::var(Var::L, 1).times(&Monomial::var(Var::M, 1));
        let c = Monomial::var(Var::L, 3);
        // equal degree: more M wins
        assert!(a > b);
        assert!(c > a);
        assert!(Monomial::var(Var::V, 1) < Monomial::var(Var::M, 1));
    }

    #[test]
    fn difference_of_squares() {
        let m = v(Var::M);
        let p = &(&m + &c(1)) * &(&m - &c(1));
        assert_eq!(p, &m.pow(2) - &c(1));
        assert_eq!(p.to_string(), "M^2 - 1");
        assert_eq!(&p + &IntPoly::zero(), p);
    }

    #[test]
    fn l_squared_product_shape() {
        let a = IntPoly::term(BigInt::from(1), Monomial::from_exps([4, 2, 0, 0, 0, 0, 0, 0]));
        let b = v(Var::M).pow(4);
        assert_eq!((&a * &b).to_string(), "M^8*L^2");
    }

    #[test]
    fn reverse_examples() {
        let m = v(Var::M);
        let p = &(&m.pow(2) + &(&c(2) * &m)) + &c(3);
        assert_eq!(p.reverse_in(Var::M).to_string(), "3*M^2 + 2*M + 1");
        assert_eq!(m.reverse_in(Var::M), c(1));
        let a = four_one().rename(Var::L, Var::Lbar);
        assert_eq!(a.reverse_in(Var::M), a);
        assert!(IntPoly::zero().reverse_in(Var::M).is_zero());
    }

    #[test]
    fn derivative_examples() {
        let p = IntPoly::term(BigInt::from(1), Monomial::from_exps([16, 0, 0, 0, 0, 2, 0, 0]));
        assert_eq!(p.derivative(Var::M).to_string(), "16*M^15*Y^2");
        assert!(c(7).derivative(Var::V).is_zero());
    }

    #[test]
    fn content_examples() {
        let m = v(Var::M);
        let p = &(&c(-2) * &m.pow(2)) - &(&c(2) * &m);
        let (content, prim) = p.content_primitive();
        assert_eq!(content.coeff, BigInt::from(-2));
        assert_eq!(content.monomial, Monomial::var(Var::M, 1));
        assert_eq!(prim, &m + &c(1));
        let (content, prim) = prim.content_primitive();
        assert_eq!(content.coeff, BigInt::from(1));
        assert!(content.monomial.is_one());
        assert_eq!(prim, &m + &c(1));
    }

    #[test]
    fn riley_content_under_graded_lex() {
        let m = v(Var::M);
        let w = v(Var::W);
        let cm = [1, 0, -2, 0, -3, 0, 2, 0, 6, 0, 2, 0, -3, 0, -2, 0, 1]
            .iter()
            .enumerate()
            .fold(IntPoly::zero(), |acc, (k, &a)| &acc + &(&c(a) * &m.pow(k as u32)));
        let printed = &(&(&(-&m.pow(8)) * &w.pow(2)) + &(&cm * &w)) - &m.pow(8);
        // the graded-lex leading term is +M^16*W, so the printed sign is already normal
        let (content, prim) = printed.content_primitive();
        assert_eq!(content.coeff, BigInt::from(1));
        assert_eq!(prim.leading().unwrap().0, &Monomial::from_exps([16, 0, 0, 1, 0, 0, 0, 0]));
        assert_eq!(prim, printed);
        let (content, prim) = (-&printed).content_primitive();
        assert_eq!(content.coeff, BigInt::from(-1));
        assert_eq!(prim, printed);
    }

    #[test]
    fn exact_division() {
        let m = v(Var::M);
        let w = v(Var::W);
        let a = &(&m * &w) + &c(3);
        let b = &(&m.pow(2) - &w) + &c(1);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        assert_eq!(p.div_exact(&(&m + &c(1))), None);
    }

    #[test]
    fn evaluation_examples() {
        let prec = 128;
        let m = v(Var::M);
        let p = &(&m.pow(2) - &m) + &c(1);
        let half = BigFloat::one(prec).mul_pow2(-1);
        let s = BigFloat::from_i64(3, prec).sqrt().mul_pow2(-1);
        let mut pt = Assignment::new();
        pt.insert(Var::M, ComplexBF::new(half, s));
        assert!(p.evaluate(&pt).unwrap().log2_abs() < -120.0);
        assert_eq!(c(1).evaluate(&pt).unwrap().to_f64_pair(), (1.0, 0.0));
        let q = &v(Var::W) - &(&v(Var::L) * &v(Var::Lbar));
        let mut pt = Assignment::new();
        pt.insert(Var::L, ComplexBF::from_f64(2.0, 0.0, prec));
        pt.insert(Var::Lbar, ComplexBF::from_f64(3.0, 0.0, prec));
        assert_eq!(q.evaluate(&pt), Err(PolyError::MissingVariable(Var::W)));
        pt.insert(Var::W, ComplexBF::from_f64(6.0, 0.0, prec));
        assert!(q.evaluate(&pt).unwrap().is_zero());
    }

    #[test]
    fn compose_and_eval() {
        let w = v(Var::W);
        let x = v(Var::X);
        let r = &w - &v(Var::M);
        let shifted = r.compose(Var::W, &(&x + &c(1)));
        assert_eq!(shifted.to_string(), "-M + X + 1");
        assert_eq!(r.eval_at(Var::W, &BigInt::from(1)).to_string(), "-M + 1");
    }

    #[test]
    fn gaussian_content_and_conj() {
        let vv = GaussPoly::var(Var::V);
        let p = &vv.scale(&GaussInt::new(0, 2)) + &GaussPoly::constant(GaussInt::new(0, 4));
        let (content, prim) = p.content_primitive();
        assert!(!num_traits::Zero::is_zero(&content.coeff));
        assert!(prim.leading_coeff().is_normal());
        assert_eq!(&prim.scale(&content.coeff), &p);
        assert_eq!(p.conj().conj(), p);
        assert!(p.to_int().is_none());
    }
}
