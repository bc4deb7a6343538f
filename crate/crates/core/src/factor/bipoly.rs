//! Dense bivariate polynomials over ℤ, stored as polynomials in a main
//! variable `y` with coefficients in ℤ[x].

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::gcd::gcd_univariate;
use super::zpoly::ZPoly;
use crate::modp::bigint_mod;
use crate::poly::{IntPoly, Monomial, Var, VarSet};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly(Vec<ZPoly>);

impl BiPoly {
    pub fn new(mut c: Vec<ZPoly>) -> Self {
        while c.last().is_some_and(ZPoly::is_zero) {
            c.pop();
        }
        BiPoly(c)
    }

    pub fn zero() -> Self {
        BiPoly(Vec::new())
    }

    pub fn from_zpoly(c: ZPoly) -> Self {
        BiPoly::new(vec![c])
    }

    /// Lift a polynomial in `y` alone.
    pub fn from_y(p: &ZPoly) -> Self {
        BiPoly::new(p.coeffs().iter().map(|c| ZPoly::constant(c.clone())).collect())
    }

    pub fn coeffs(&self) -> &[ZPoly] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> ZPoly {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree_y(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn degree_x(&self) -> usize {
        self.0.iter().map(ZPoly::degree).max().unwrap_or(0)
    }

    pub fn lc_y(&self) -> &ZPoly {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    pub fn from_multi(p: &IntPoly, x: Var, y: Var) -> Self {
        let dy = p.degree(y) as usize;
        let dx = p.degree(x) as usize;
        let mut c = vec![vec![BigInt::zero(); dx + 1]; dy + 1];
        for (m, v) in p.iter() {
            c[m.exp(y) as usize][m.exp(x) as usize] = v.clone();
        }
        BiPoly::new(c.into_iter().map(ZPoly::new).collect())
    }

    pub fn to_multi(&self, x: Var, y: Var) -> IntPoly {
        let mut terms = Vec::new();
        for (j, cj) in self.0.iter().enumerate() {
            for (i, c) in cj.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    let mut m = Monomial::one();
                    m.set(x, i as u32);
                    m.set(y, j as u32);
                    terms.push((m, c.clone()));
                }
            }
        }
        IntPoly::from_terms(terms).with_vars(VarSet::of(&[x, y]))
    }

    /// Swap the roles of `x` and `y`.
    pub fn transpose(&self) -> Self {
        let dx = self.degree_x();
        let mut c = vec![vec![BigInt::zero(); self.0.len()]; dx + 1];
        for (j, cj) in self.0.iter().enumerate() {
            for (i, v) in cj.coeffs().iter().enumerate() {
                c[i][j] = v.clone();
            }
        }
        BiPoly::new(c.into_iter().map(ZPoly::new).collect())
    }

    /// `p(t, y)` as a polynomial in `y`.
    pub fn eval_x(&self, t: &BigInt) -> ZPoly {
        ZPoly::new(self.0.iter().map(|c| c.eval(t)).collect())
    }

    /// `p(a, y) mod p`, not trimmed: index `k` is the `y^k` coefficient.
    pub fn eval_x_mod(&self, a: u64, p: u64) -> Vec<u64> {
        self.0
            .iter()
            .map(|c| {
                c.coeffs().iter().rev().fold(0u64, |acc, v| {
                    crate::modp::addmod(crate::modp::mulmod(acc, a, p), bigint_mod(v, p), p)
                })
            })
            .collect()
    }

    /// `p(x + t, y)`
    pub fn shift_x(&self, t: &BigInt) -> Self {
        BiPoly(self.0.iter().map(|c| c.taylor_shift(t)).collect())
    }

    pub fn derivative_y(&self) -> Self {
        BiPoly::new(
            self.0.iter().enumerate().skip(1).map(|(k, c)| c.scale(&BigInt::from(k))).collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![ZPoly::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPoly::new(out)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        BiPoly::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }

    pub fn scale(&self, c: &ZPoly) -> Self {
        BiPoly::new(self.0.iter().map(|v| v * c).collect())
    }

    pub fn div_zpoly_exact(&self, c: &ZPoly) -> Option<Self> {
        self.0.iter().map(|v| v.div_exact(c)).collect::<Option<Vec<_>>>().map(BiPoly::new)
    }

    /// Exact quotient in ℤ[x][y], or `None`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(BiPoly::zero());
        }
        if self.0.len() < d.0.len() {
            return None;
        }
        let dd = d.degree_y();
        let lc = d.lc_y();
        let mut r = self.0.clone();
        let mut q = vec![ZPoly::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            if r[k + dd].is_zero() {
                continue;
            }
            let c = r[k + dd].div_exact(lc)?;
            for (j, dj) in d.0.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * dj);
            }
            q[k] = c;
        }
        r.iter().all(ZPoly::is_zero).then(|| BiPoly::new(q))
    }

    /// Gcd over ℤ[x] of the `y`-coefficients, with positive leading
    /// coefficient.
    pub fn content_y(&self) -> ZPoly {
        let mut g = ZPoly::zero();
        for c in &self.0 {
            g = gcd_univariate(&g, c);
            if g.is_constant() && g.coeffs().first().is_some_and(|v| v == &BigInt::from(1)) {
                break;
            }
        }
        g
    }

    /// Flip the sign so the leading coefficient of `lc_y` is positive.
    pub fn normal_sign(self) -> Self {
        if !self.is_zero() && self.lc_y().lc().is_negative() {
            BiPoly(self.0.iter().map(|c| -c).collect())
        } else {
            self
        }
    }
}
