//! Coefficient rings: ℤ (`BigInt`) and the Gaussian integers ℤ[i].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::float::ComplexBF;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ring {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Z[i]")]
    Gaussian,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Integers => "Z",
            Ring::Gaussian => "Z[i]",
        })
    }
}

/// Operations the polynomial layer needs from a coefficient ring.
pub trait Coeff: Clone + Eq + fmt::Debug + fmt::Display + Send + Sync + Zero + One + 'static {
    const RING: Ring;

    fn from_int(n: BigInt) -> Self;

    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn add_assign(&mut self, o: &Self);
    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self);

    /// Exact quotient, or `None` when `d` does not divide `self`.
    fn div_exact(&self, d: &Self) -> Option<Self>;
    /// Greatest common divisor, normalized (see [`Coeff::is_normal`]).
    fn gcd(&self, o: &Self) -> Self;
    /// Unit `u` such that `u * self` is normal. One for zero.
    fn normal_unit(&self) -> Self;
    /// Sign convention for leading coefficients: positive integers; for
    /// Gaussian integers `re > 0`, or `re = 0` and `im > 0`.
    fn is_normal(&self) -> bool;

    fn conj(&self) -> Self;
    /// `|re| + |im|`, an upper bound for the modulus.
    fn l1(&self) -> BigInt;
    fn to_complex(&self, prec: u32) -> ComplexBF;
    fn real_part(&self) -> &BigInt;
    fn imag_part(&self) -> BigInt;
    /// Build from real and imaginary parts; `None` for a nonzero imaginary
    /// part in ℤ.
    fn from_parts(re: BigInt, im: BigInt) -> Option<Self>;
}

impl Coeff for BigInt {
    const RING: Ring = Ring::Integers;

    fn from_int(n: BigInt) -> Self {
        n
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if Zero::is_zero(d) {
            return None;
        }
        let (q, r) = self.div_rem(d);
        Zero::is_zero(&r).then_some(q)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn normal_unit(&self) -> Self {
        if self.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
    fn is_normal(&self) -> bool {
        self.is_positive()
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn l1(&self) -> BigInt {
        self.abs()
    }
    fn to_complex(&self, prec: u32) -> ComplexBF {
        ComplexBF::from_int(self, prec)
    }
    fn real_part(&self) -> &BigInt {
        self
    }
    fn imag_part(&self) -> BigInt {
        BigInt::zero()
    }
    fn from_parts(re: BigInt, im: BigInt) -> Option<Self> {
        Zero::is_zero(&im).then_some(re)
    }
}

/// Gaussian integer `re + im*i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt { re: re.into(), im: im.into() }
    }

    pub fn i() -> Self {
        GaussInt::new(0, 1)
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Quotient rounded to the nearest Gaussian integer.
    fn div_round(&self, d: &Self) -> Self {
        let n = d.norm();
        let num = self.times(&d.conj());
        GaussInt { re: round_div(&num.re, &n), im: round_div(&num.im, &n) }
    }
}

fn round_div(a: &BigInt, n: &BigInt) -> BigInt {
    // floor((2a + n) / 2n) for n > 0
    let two_a: BigInt = a << 1u32;
    (two_a + n).div_floor(&(n << 1u32))
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (Zero::is_zero(&self.re), Zero::is_zero(&self.im)) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "({} - {}*i)", self.re, -&self.im)
                } else {
                    write!(f, "({} + {}*i)", self.re, self.im)
                }
            }
        }
    }
}

impl std::ops::Add for GaussInt {
    type Output = GaussInt;
    fn add(self, o: GaussInt) -> GaussInt {
        Coeff::plus(&self, &o)
    }
}

impl std::ops::Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, o: GaussInt) -> GaussInt {
        Coeff::times(&self, &o)
    }
}

impl Zero for GaussInt {
    fn zero() -> Self {
        GaussInt::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussInt {
    fn one() -> Self {
        GaussInt::new(1, 0)
    }
    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
}

impl From<BigInt> for GaussInt {
    fn from(re: BigInt) -> Self {
        GaussInt { re, im: BigInt::zero() }
    }
}

impl Coeff for GaussInt {
    const RING: Ring = Ring::Gaussian;

    fn from_int(n: BigInt) -> Self {
        n.into()
    }
    fn plus(&self, o: &Self) -> Self {
        GaussInt { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn minus(&self, o: &Self) -> Self {
        GaussInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn times(&self, o: &Self) -> Self {
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn negated(&self) -> Self {
        GaussInt { re: -&self.re, im: -&self.im }
    }
    fn add_assign(&mut self, o: &Self) {
        self.re += &o.re;
        self.im += &o.im;
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        self.re += &a.re * &b.re - &a.im * &b.im;
        self.im += &a.re * &b.im + &a.im * &b.re;
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if Zero::is_zero(d) {
            return None;
        }
        let n = d.norm();
        let num = self.times(&d.conj());
        let (qr, rr) = num.re.div_rem(&n);
        let (qi, ri) = num.im.div_rem(&n);
        (Zero::is_zero(&rr) && Zero::is_zero(&ri)).then_some(GaussInt { re: qr, im: qi })
    }
    fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !Zero::is_zero(&b) {
            let q = a.div_round(&b);
            let r = a.minus(&q.times(&b));
            a = b;
            b = r;
        }
        let u = a.normal_unit();
        a.times(&u)
    }
    fn normal_unit(&self) -> Self {
        // the associate with re > 0 and im >= 0
        let (re, im) = (self.re.sign(), self.im.sign());
        use num_bigint::Sign::*;
        match (re, im) {
            (NoSign, NoSign) | (Plus, Plus) | (Plus, NoSign) => GaussInt::one(),
            (NoSign | Minus, Plus) => GaussInt::new(0, -1),
            (Minus, NoSign | Minus) => GaussInt::new(-1, 0),
            (NoSign | Plus, Minus) => GaussInt::new(0, 1),
        }
    }
    fn is_normal(&self) -> bool {
        self.re.is_positive() || (Zero::is_zero(&self.re) && self.im.is_positive())
    }
    fn conj(&self) -> Self {
        GaussInt { re: self.re.clone(), im: -&self.im }
    }
    fn l1(&self) -> BigInt {
        self.re.abs() + self.im.abs()
    }
    fn to_complex(&self, prec: u32) -> ComplexBF {
        ComplexBF::from_gauss(&self.re, &self.im, prec)
    }
    fn real_part(&self) -> &BigInt {
        &self.re
    }
    fn imag_part(&self) -> BigInt {
        self.im.clone()
    }
    fn from_parts(re: BigInt, im: BigInt) -> Option<Self> {
        Some(GaussInt { re, im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_division_and_gcd() {
        let a = GaussInt::new(3, 4);
        let b = GaussInt::new(1, 2);
        let p = a.times(&b);
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        assert_eq!(GaussInt::new(5, 0).div_exact(&GaussInt::new(2, 0)), None);
        // 5 = (2+i)(2-i)
        let g = Coeff::gcd(&GaussInt::new(5, 0), &GaussInt::new(2, 1).times(&GaussInt::new(7, 0)));
        assert!(g.is_normal());
        assert_eq!(g.norm(), BigInt::from(5));
    }

    #[test]
    fn normal_units() {
        for (re, im) in [(2, 3), (-2, 3), (0, -5), (0, 5), (-1, -1), (3, -7)] {
            let z = GaussInt::new(re, im);
            let n = z.times(&z.normal_unit());
            assert!(n.is_normal(), "{z} -> {n}");
            assert_eq!(n.norm(), z.norm());
        }
        assert!(Coeff::is_normal(&BigInt::from(3)));
        assert_eq!(BigInt::from(-3).normal_unit(), BigInt::from(-1));
    }

    #[test]
    fn conjugation_is_involution() {
        let z = GaussInt::new(-4, 9);
        assert_eq!(z.conj().conj(), z);
    }
}
