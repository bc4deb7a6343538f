//! Arbitrary-precision binary floating point and complex numbers.
//!
//! A [`BigFloat`] is `mant * 2^exp` with `|mant| < 2^prec`, rounded to nearest
//! after every operation. Results take the larger precision of their operands.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

/// Smallest precision accepted anywhere in the crate.
pub const MIN_PRECISION: u32 = 64;

#[derive(Clone, Debug)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn round_shift(mag: &BigUint, k: u64) -> BigUint {
    // round half up on the magnitude
    let q: BigUint = mag >> k;
    if mag.bit(k - 1) {
        q + 1u32
    } else {
        q
    }
}

impl BigFloat {
    fn normalized(mant: BigInt, exp: i64, prec: u32) -> Self {
        if mant.is_zero() {
            return BigFloat { mant, exp: 0, prec };
        }
        let bits = mant.bits();
        if bits <= prec as u64 {
            return BigFloat { mant, exp, prec };
        }
        let k = bits - prec as u64;
        let sign = mant.sign();
        let mag = round_shift(mant.magnitude(), k);
        let mut f = BigFloat {
            mant: BigInt::from_biguint(sign, mag),
            exp: exp + k as i64,
            prec,
        };
        // rounding may carry into an extra bit
        if f.mant.bits() > prec as u64 {
            f.mant >>= 1;
            f.exp += 1;
        }
        f
    }

    pub fn zero(prec: u32) -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn one(prec: u32) -> Self {
        BigFloat { mant: BigInt::one(), exp: 0, prec }
    }

    pub fn from_int(n: &BigInt, prec: u32) -> Self {
        Self::normalized(n.clone(), 0, prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::normalized(BigInt::from(n), 0, prec)
    }

    /// `mant * 2^exp`, rounded.
    pub fn from_parts(mant: BigInt, exp: i64, prec: u32) -> Self {
        Self::normalized(mant, exp, prec)
    }

    /// Exact conversion of a finite double. Non-finite inputs map to zero.
    pub fn from_f64(x: f64, prec: u32) -> Self {
        if !x.is_finite() || x == 0.0 {
            return Self::zero(prec);
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let e = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, ex) = if e == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), e - 1075)
        };
        Self::normalized(BigInt::from(m) * sign, ex, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::normalized(self.mant.clone(), self.exp, prec)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    /// Multiply by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigFloat { mant: self.mant.clone(), exp: self.exp + k, prec: self.prec }
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        Self::normalized(&self.mant * n, self.exp, self.prec)
    }

    /// Position of the most significant bit: `|x|` lies in `[2^(e-1), 2^e)`.
    /// Returns `None` for zero.
    pub fn magnitude_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.bits() as i64)
        }
    }

    /// Approximate `log2 |x|`; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.mant.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (self.mant.abs() >> shift as u64).to_f64().unwrap_or(1.0);
        top.log2() + (self.exp + shift) as f64
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let shift = (bits - 64).max(0);
        let top = (&self.mant >> shift as u64).to_f64().unwrap_or(0.0);
        let e = self.exp + shift;
        if e > 2000 {
            return top.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        // split the scaling so intermediate powers stay finite
        let half = e / 2;
        top * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "square root of a negative BigFloat");
        if self.is_zero() {
            return self.clone();
        }
        let prec = self.prec;
        // mant * 2^exp with an even exponent and about 2*prec+4 bits of mantissa
        let want = 2 * prec as i64 + 4;
        let mut shift = want - self.mant.bits() as i64;
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = if shift >= 0 {
            self.mant.magnitude() << shift as u64
        } else {
            self.mant.magnitude() >> (-shift) as u64
        };
        let r = m.sqrt();
        Self::normalized(BigInt::from(r), (self.exp - shift) / 2, prec)
    }

    pub fn recip(&self) -> Self {
        Self::one(self.prec).div_ref(self)
    }

    fn add_ref(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        if o.is_zero() {
            return self.with_prec(prec);
        }
        if self.is_zero() {
            return o.with_prec(prec);
        }
        let (hi, lo) = if self.exp >= o.exp { (self, o) } else { (o, self) };
        let diff = hi.exp - lo.exp;
        let hi_top = hi.exp + hi.mant.bits() as i64;
        let lo_top = lo.exp + lo.mant.bits() as i64;
        if lo_top + 2 < hi_top - prec as i64 {
            // lo sits below a quarter ulp of the result
            return hi.with_prec(prec);
        }
        let m = (&hi.mant << diff as u64) + &lo.mant;
        Self::normalized(m, lo.exp, prec)
    }

    fn mul_ref(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        Self::normalized(&self.mant * &o.mant, self.exp + o.exp, prec)
    }

    fn div_ref(&self, o: &Self) -> Self {
        assert!(!o.is_zero(), "BigFloat division by zero");
        let prec = self.prec.max(o.prec);
        if self.is_zero() {
            return Self::zero(prec);
        }
        let shift = (prec as i64 + 2 + o.mant.bits() as i64 - self.mant.bits() as i64).max(0);
        let num = &self.mant << shift as u64;
        let (q, r) = num.div_rem(&o.mant);
        // sticky bit keeps round-to-nearest honest
        let q = (q << 1u32) + if r.is_zero() { 0 } else { q_sign(&num, &o.mant) };
        Self::normalized(q, self.exp - o.exp - shift - 1, prec)
    }

    pub fn cmp_abs(&self, o: &Self) -> Ordering {
        self.abs().sub_ref(&o.abs()).signum().cmp(&0)
    }

    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    fn neg_ref(&self) -> Self {
        BigFloat { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }

    pub fn max_abs<'a>(&'a self, o: &'a Self) -> &'a Self {
        if self.cmp_abs(o) == Ordering::Less {
            o
        } else {
            self
        }
    }

    /// Round to the nearest integer.
    pub fn round_to_int(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as u64;
        }
        let k = (-self.exp) as u64;
        if k > self.mant.bits() + 1 {
            return BigInt::zero();
        }
        BigInt::from_biguint(self.mant.sign(), round_shift(self.mant.magnitude(), k))
    }

    /// `pi` to the given precision (Machin's formula).
    pub fn pi(prec: u32) -> Self {
        let wp = prec + 32;
        let a = atan_series(&Self::one(wp).div_ref(&Self::from_i64(5, wp)));
        let b = atan_series(&Self::one(wp).div_ref(&Self::from_i64(239, wp)));
        a.mul_pow2(4).sub_ref(&b.mul_pow2(2)).with_prec(prec)
    }

    pub fn atan(&self) -> Self {
        let prec = self.prec;
        let wp = prec + 32;
        let x = self.with_prec(wp);
        if x.is_zero() {
            return Self::zero(prec);
        }
        if x.cmp_abs(&Self::one(wp)) == Ordering::Greater {
            let half_pi = Self::pi(wp).mul_pow2(-1);
            let inner = x.recip().atan();
            let r = if x.is_negative() {
                half_pi.neg_ref().sub_ref(&inner)
            } else {
                half_pi.sub_ref(&inner)
            };
            return r.with_prec(prec);
        }
        let mut x = x;
        let mut k = 0i64;
        let one = Self::one(wp);
        while x.magnitude_exp().is_some_and(|e| e > -10) {
            let s = one.add_ref(&x.mul_ref(&x)).sqrt();
            x = x.div_ref(&one.add_ref(&s));
            k += 1;
        }
        atan_series(&x).mul_pow2(k).with_prec(prec)
    }

    /// `atan2(y, x)` in `(-pi, pi]`.
    pub fn atan2(y: &Self, x: &Self) -> Self {
        let prec = y.prec.max(x.prec);
        let wp = prec + 16;
        if x.is_zero() && y.is_zero() {
            return Self::zero(prec);
        }
        let pi = Self::pi(wp);
        let r = if x.cmp_abs(y) != Ordering::Less {
            let t = y.with_prec(wp).div_ref(x).atan();
            if !x.is_negative() {
                t
            } else if y.is_negative() {
                t.sub_ref(&pi)
            } else {
                t.add_ref(&pi)
            }
        } else {
            let t = x.with_prec(wp).div_ref(y).atan();
            let half = pi.mul_pow2(-1);
            if y.is_negative() {
                half.neg_ref().sub_ref(&t)
            } else {
                half.sub_ref(&t)
            }
        };
        r.with_prec(prec)
    }

    /// `(cos t, sin t)`.
    pub fn cos_sin(&self) -> (Self, Self) {
        let prec = self.prec;
        let k = self.magnitude_exp().map_or(0, |e| (e + 10).max(0));
        let wp = prec + 32 + 2 * k as u32;
        let t = self.with_prec(wp).mul_pow2(-k);
        // Taylor series at a small argument
        let t2 = t.mul_ref(&t);
        let mut term = Self::one(wp);
        let mut c = Self::one(wp);
        let mut s = Self::zero(wp);
        let mut sterm = t.clone();
        let mut n = 1i64;
        let eps = -(wp as i64) - 4;
        loop {
            s = s.add_ref(&sterm);
            term = term.mul_ref(&t2).div_ref(&Self::from_i64(-(2 * n - 1) * (2 * n), wp));
            c = c.add_ref(&term);
            sterm = sterm.mul_ref(&t2).div_ref(&Self::from_i64(-(2 * n) * (2 * n + 1), wp));
            n += 1;
            let small = |v: &Self| v.magnitude_exp().is_none_or(|e| e < eps);
            if small(&term) && small(&sterm) {
                break;
            }
        }
        for _ in 0..k {
            let nc = c.mul_ref(&c).sub_ref(&s.mul_ref(&s));
            s = c.mul_ref(&s).mul_pow2(1);
            c = nc;
        }
        (c.with_prec(prec), s.with_prec(prec))
    }

    /// Scientific notation with `digits` significant decimal digits,
    /// e.g. `1.6037507477489603e-2`.
    pub fn to_sci_string(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return format!("0.{}e0", "0".repeat(digits - 1));
        }
        let neg = self.is_negative();
        let mag = self.mant.abs();
        // decimal exponent estimate, corrected below
        let mut e10 = (self.log2_abs() * std::f64::consts::LOG10_2).floor() as i64;
        let ten = BigInt::from(10u32);
        let mut n;
        loop {
            let s = digits as i64 - 1 - e10;
            let mut num = mag.clone();
            let mut den = BigInt::one();
            if s >= 0 {
                num *= Pow::pow(&ten, s as u64);
            } else {
                den *= Pow::pow(&ten, (-s) as u64);
            }
            if self.exp >= 0 {
                num <<= self.exp as u64;
            } else {
                den <<= (-self.exp) as u64;
            }
            let (q, r) = num.div_rem(&den);
            n = if (&r << 1u32) >= den { q + 1 } else { q };
            let len = n.to_string().len();
            if len > digits {
                e10 += 1;
            } else if len < digits {
                e10 -= 1;
            } else {
                break;
            }
        }
        let s = n.to_string();
        let (head, tail) = s.split_at(1);
        let sign = if neg { "-" } else { "" };
        if tail.is_empty() {
            format!("{sign}{head}e{e10}")
        } else {
            format!("{sign}{head}.{tail}e{e10}")
        }
    }

    /// Number of decimal digits that represent `prec` bits.
    pub fn decimal_digits(prec: u32) -> usize {
        ((prec as f64) * std::f64::consts::LOG10_2).ceil() as usize + 1
    }

    /// Parse a decimal literal such as `-0.5`, `4.0111`, `1e-3`, `3.2E+5`.
    pub fn parse_decimal(text: &str, prec: u32) -> Result<Self, String> {
        let t = text.trim();
        let (neg, body) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let (num, exp_part) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], Some(&body[i + 1..])),
            None => (body, None),
        };
        let (int_part, frac_part) = match num.find('.') {
            Some(i) => (&num[..i], &num[i + 1..]),
            None => (num, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(format!("invalid number '{text}'"));
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(format!("invalid number '{text}'"));
        }
        let mut e10: i64 = match exp_part {
            Some(e) => e.parse().map_err(|_| format!("invalid exponent in '{text}'"))?,
            None => 0,
        };
        let digits = format!("{int_part}{frac_part}");
        e10 -= frac_part.len() as i64;
        let mut m: BigInt = digits.parse().unwrap_or_default();
        if neg {
            m = -m;
        }
        let ten = BigInt::from(10u32);
        let wp = prec + 16;
        let v = if e10 >= 0 {
            Self::from_int(&(m * Pow::pow(&ten, e10 as u64)), wp)
        } else {
            Self::from_int(&m, wp).div_ref(&Self::from_int(&Pow::pow(&ten, (-e10) as u64), wp))
        };
        Ok(v.with_prec(prec))
    }
}

fn q_sign(num: &BigInt, den: &BigInt) -> i32 {
    if num.is_negative() != den.is_negative() {
        -1
    } else {
        1
    }
}

/// `sum (-1)^n x^(2n+1)/(2n+1)` for small `|x|`.
fn atan_series(x: &BigFloat) -> BigFloat {
    let wp = x.prec;
    let x2 = x.mul_ref(x);
    let mut pow = x.clone();
    let mut sum = BigFloat::zero(wp);
    let eps = -(wp as i64) - 4;
    let mut n = 0i64;
    loop {
        let term = pow.div_ref(&BigFloat::from_i64(2 * n + 1, wp));
        if term.magnitude_exp().is_none_or(|e| e < eps) {
            break;
        }
        sum = if n % 2 == 0 { sum.add_ref(&term) } else { sum.sub_ref(&term) };
        pow = pow.mul_ref(&x2);
        n += 1;
    }
    sum
}

impl PartialEq for BigFloat {
    fn eq(&self, o: &Self) -> bool {
        self.sub_ref(o).is_zero()
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.sub_ref(o).signum().cmp(&0))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci_string(Self::decimal_digits(self.prec)))
    }
}

macro_rules! float_binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl<'a> $tr<&'a BigFloat> for &'a BigFloat {
            type Output = BigFloat;
            fn $m(self, o: &'a BigFloat) -> BigFloat {
                self.$inner(o)
            }
        }
        impl $tr<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, o: BigFloat) -> BigFloat {
                self.$inner(&o)
            }
        }
    };
}
float_binop!(Add, add, add_ref);
float_binop!(Sub, sub, sub_ref);
float_binop!(Mul, mul, mul_ref);
float_binop!(Div, div, div_ref);

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        self.neg_ref()
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        self.neg_ref()
    }
}

/// Complex number with [`BigFloat`] parts.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexBF {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl ComplexBF {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        ComplexBF { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        ComplexBF::new(BigFloat::zero(prec), BigFloat::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        ComplexBF::new(BigFloat::one(prec), BigFloat::zero(prec))
    }

    pub fn i(prec: u32) -> Self {
        ComplexBF::new(BigFloat::zero(prec), BigFloat::one(prec))
    }

    pub fn real(re: BigFloat) -> Self {
        let p = re.prec();
        ComplexBF::new(re, BigFloat::zero(p))
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        ComplexBF::new(BigFloat::from_f64(re, prec), BigFloat::from_f64(im, prec))
    }

    pub fn from_int(n: &BigInt, prec: u32) -> Self {
        ComplexBF::real(BigFloat::from_int(n, prec))
    }

    pub fn from_gauss(re: &BigInt, im: &BigInt, prec: u32) -> Self {
        ComplexBF::new(BigFloat::from_int(re, prec), BigFloat::from_int(im, prec))
    }

    /// `exp(i theta)`.
    pub fn exp_i(theta: &BigFloat) -> Self {
        let (c, s) = theta.cos_sin();
        ComplexBF::new(c, s)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        ComplexBF::new(self.re.with_prec(prec), self.im.with_prec(prec))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexBF::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> BigFloat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt()
    }

    /// `log2 |z|`, approximate; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        let a = self.re.log2_abs();
        let b = self.im.log2_abs();
        let hi = a.max(b);
        if hi == f64::NEG_INFINITY {
            return hi;
        }
        hi + 0.5 * (1.0 + (2f64).powf(2.0 * (a.min(b) - hi))).log2()
    }

    pub fn arg(&self) -> BigFloat {
        BigFloat::atan2(&self.im, &self.re)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        ComplexBF::new(self.re.mul_pow2(k), self.im.mul_pow2(k))
    }

    pub fn mul_real(&self, x: &BigFloat) -> Self {
        ComplexBF::new(&self.re * x, &self.im * x)
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let prec = self.prec();
        if self.is_zero() {
            return Self::zero(prec);
        }
        let r = self.abs();
        if !self.re.is_negative() {
            let t = (&r + &self.re).mul_pow2(-1).sqrt();
            let im = &self.im / &t.mul_pow2(1);
            ComplexBF::new(t, im)
        } else {
            let t = (&r - &self.re).mul_pow2(-1).sqrt();
            let re = &self.im.abs() / &t.mul_pow2(1);
            let im = if self.im.is_negative() { -t } else { t };
            ComplexBF::new(re, im)
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        ComplexBF::new(&self.re / &n, -(&self.im / &n))
    }

    /// `(re, im)` as decimal strings with enough digits for the precision.
    pub fn to_strings(&self) -> (String, String) {
        let d = BigFloat::decimal_digits(self.prec());
        (self.re.to_sci_string(d), self.im.to_sci_string(d))
    }
}

impl fmt::Display for ComplexBF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or_else(|| BigFloat::decimal_digits(self.prec()));
        let im = self.im.to_sci_string(d);
        if let Some(stripped) = im.strip_prefix('-') {
            write!(f, "{} - {}*i", self.re.to_sci_string(d), stripped)
        } else {
            write!(f, "{} + {}*i", self.re.to_sci_string(d), im)
        }
    }
}

impl<'a> Add<&'a ComplexBF> for &'a ComplexBF {
    type Output = ComplexBF;
    fn add(self, o: &'a ComplexBF) -> ComplexBF {
        ComplexBF::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a ComplexBF> for &'a ComplexBF {
    type Output = ComplexBF;
    fn sub(self, o: &'a ComplexBF) -> ComplexBF {
        ComplexBF::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a ComplexBF> for &'a ComplexBF {
    type Output = ComplexBF;
    fn mul(self, o: &'a ComplexBF) -> ComplexBF {
        let re = &(&self.re * &o.re) - &(&self.im * &o.im);
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        ComplexBF::new(re, im)
    }
}

impl<'a> Div<&'a ComplexBF> for &'a ComplexBF {
    type Output = ComplexBF;
    fn div(self, o: &'a ComplexBF) -> ComplexBF {
        let n = o.norm_sqr();
        let num = self * &o.conj();
        ComplexBF::new(&num.re / &n, &num.im / &n)
    }
}

impl Neg for &ComplexBF {
    type Output = ComplexBF;
    fn neg(self) -> ComplexBF {
        ComplexBF::new(-&self.re, -&self.im)
    }
}

macro_rules! complex_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ComplexBF> for ComplexBF {
            type Output = ComplexBF;
            fn $m(self, o: ComplexBF) -> ComplexBF {
                (&self).$m(&o)
            }
        }
    };
}
complex_owned!(Add, add);
complex_owned!(Sub, sub);
complex_owned!(Mul, mul);
complex_owned!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &BigFloat, b: &BigFloat, bits: i64) -> bool {
        (a - b).magnitude_exp().is_none_or(|e| e < -bits)
    }

    #[test]
    fn f64_roundtrip() {
        for x in [1.0, -2.5, 0.1, 1e-300, 3.0e300, 123456789.125] {
            assert_eq!(BigFloat::from_f64(x, 64).to_f64(), x);
        }
    }

    #[test]
    fn division_and_sqrt() {
        let p = 256;
        let third = &BigFloat::one(p) / &BigFloat::from_i64(3, p);
        let back = &third * &BigFloat::from_i64(3, p);
        assert!(close(&back, &BigFloat::one(p), 250));
        let s = BigFloat::from_i64(2, p).sqrt();
        assert!(close(&(&s * &s), &BigFloat::from_i64(2, p), 250));
    }

    #[test]
    fn pi_digits() {
        let pi = BigFloat::pi(200);
        assert!(pi
            .to_sci_string(40)
            .starts_with("3.14159265358979323846264338327950288419"));
    }

    #[test]
    fn trig_identities() {
        let p = 256;
        let pi = BigFloat::pi(p);
        let (c, s) = (&pi / &BigFloat::from_i64(3, p)).cos_sin();
        assert!(close(&c, &BigFloat::one(p).mul_pow2(-1), 245));
        let r3 = BigFloat::from_i64(3, p).sqrt().mul_pow2(-1);
        assert!(close(&s, &r3, 245));
        let z = ComplexBF::new(c, s);
        assert!(close(&z.arg(), &(&pi / &BigFloat::from_i64(3, p)), 245));
        let w = ComplexBF::new(BigFloat::from_i64(-1, p), BigFloat::zero(p));
        assert!(close(&w.arg(), &pi, 245));
        let big = BigFloat::from_i64(40, p);
        let (c2, s2) = big.cos_sin();
        assert!(close(&(&(&c2 * &c2) + &(&s2 * &s2)), &BigFloat::one(p), 240));
    }

    #[test]
    fn decimal_strings() {
        let x = BigFloat::parse_decimal("4.0111190450200173031", 128).unwrap();
        assert_eq!(x.to_sci_string(20), "4.0111190450200173031e0");
        let y = BigFloat::parse_decimal("-1.5e-3", 64).unwrap();
        assert_eq!(y.to_f64(), -0.0015);
        assert_eq!(BigFloat::from_i64(3888, 64).to_sci_string(4), "3.888e3");
        assert!(BigFloat::parse_decimal("1.2.3", 64).is_err());
    }

    #[test]
    fn complex_sqrt_principal() {
        let p = 128;
        let z = ComplexBF::from_f64(-4.0, 0.0, p);
        let r = z.sqrt();
        assert_eq!(r.to_f64_pair(), (0.0, 2.0));
        let w = ComplexBF::from_f64(3.0, -4.0, p).sqrt();
        assert_eq!(w.to_f64_pair(), (2.0, -1.0));
    }
}
