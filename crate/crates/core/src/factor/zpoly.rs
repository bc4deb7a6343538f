//! Dense univariate polynomials over ℤ.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::modp::bigint_mod;
use crate::poly::{IntPoly, Monomial, Var};

/// Little-endian coefficient vector with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ZPoly(Vec<BigInt>);

impl ZPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        ZPoly(c)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        ZPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        ZPoly(Vec::new())
    }

    pub fn one() -> Self {
        ZPoly(vec![BigInt::one()])
    }

    pub fn constant(c: BigInt) -> Self {
        ZPoly::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k];
        v.push(c);
        ZPoly::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.0
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    /// Degree; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// Leading coefficient; panics on zero.
    pub fn lc(&self) -> &BigInt {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn shift_down(&self, k: usize) -> Self {
        ZPoly(self.0[k.min(self.0.len())..].to_vec())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return ZPoly::zero();
        }
        ZPoly(self.0.iter().map(|c| c * k).collect())
    }

    pub fn div_scalar_exact(&self, k: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.0.len());
        for c in &self.0 {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(ZPoly(out))
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `(c, q)` with `self = c * q`, `q` primitive with positive leading
    /// coefficient.
    pub fn content_primitive(&self) -> (BigInt, Self) {
        if self.is_zero() {
            return (BigInt::zero(), ZPoly::zero());
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        (c.clone(), self.div_scalar_exact(&c).expect("content divides"))
    }

    pub fn primitive(&self) -> Self {
        self.content_primitive().1
    }

    pub fn derivative(&self) -> Self {
        ZPoly::new(self.0.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `p(x + t)`
    pub fn taylor_shift(&self, t: &BigInt) -> Self {
        if t.is_zero() {
            return self.clone();
        }
        let mut c = self.0.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let add = &c[j + 1] * t;
                c[j] += add;
            }
        }
        ZPoly::new(c)
    }

    /// Exact quotient, or `None` if `d` does not divide `self` in ℤ[x].
    pub fn div_exact(&self, d: &ZPoly) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        if self.0.len() < d.0.len() {
            return None;
        }
        let dd = d.degree();
        let lc = d.lc();
        let mut r = self.0.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (c, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, dj) in d.0.iter().enumerate() {
                r[k + j] -= &c * dj;
            }
            q[k] = c;
        }
        r.iter().all(Zero::is_zero).then(|| ZPoly::new(q))
    }

    pub fn divides(&self, f: &ZPoly) -> bool {
        f.div_exact(self).is_some()
    }

    /// Residues modulo `p`, trimmed.
    pub fn mod_p(&self, p: u64) -> Vec<u64> {
        let mut v: Vec<u64> = self.0.iter().map(|c| bigint_mod(c, p)).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn max_abs(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Upper bound on `log2 ||p||_2`.
    pub fn l2_norm_bits(&self) -> u64 {
        let s: BigInt = self.0.iter().map(|c| c * c).sum();
        s.bits() / 2 + 1
    }

    pub fn to_multi(&self, v: Var) -> IntPoly {
        IntPoly::from_terms(
            self.0.iter().enumerate().map(|(k, c)| (Monomial::var(v, k as u32), c.clone())),
        )
        .with_vars(crate::poly::VarSet::of(&[v]))
    }

    /// Coefficients in `v`; `None` if `p` involves another variable.
    pub fn from_multi(p: &IntPoly, v: Var) -> Option<Self> {
        p.univariate_coeffs(v).map(ZPoly::new)
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, o: &ZPoly) -> ZPoly {
        let n = self.0.len().max(o.0.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, o: &ZPoly) -> ZPoly {
        let n = self.0.len().max(o.0.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly(self.0.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_shift() {
        let a = ZPoly::from_i64(&[-1, 0, 1]);
        let b = ZPoly::from_i64(&[1, 1]);
        assert_eq!(a.div_exact(&b), Some(ZPoly::from_i64(&[-1, 1])));
        assert_eq!(a.div_exact(&ZPoly::from_i64(&[1, 2])), None);
        // (x+2)^2 - 1 at x -> x - 2 gives x^2 - 1
        let c = ZPoly::from_i64(&[3, 4, 1]);
        assert_eq!(c.taylor_shift(&BigInt::from(-2)), a);
        assert_eq!(ZPoly::from_i64(&[-6, 0, -4]).content_primitive(), (BigInt::from(-2), ZPoly::from_i64(&[3, 0, 2])));
    }
}
