//! Word-size prime fields, the Gaussian extension `F_p[i]` for `p ≡ 3 (mod 4)`,
//! dense univariate kernels over them, prime generation and CRT.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::coeff::Coeff;

#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse modulo `p`; `None` for zero.
pub fn invmod(a: u64, p: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(p as i128) as u64)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes `p ≡ 3 (mod 4)` below `2^62`, descending. These support both `F_p`
/// and `F_p[i]`.
pub fn large_primes() -> impl Iterator<Item = u64> {
    let start = (1u64 << 62) - 1; // ≡ 3 mod 4
    (0..).map(move |k| start - 4 * k).filter(|&n| is_prime(n))
}

/// Odd primes in increasing order starting at `from`.
pub fn primes_from(from: u64) -> impl Iterator<Item = u64> {
    (from.max(3)..).filter(|&n| n % 2 == 1 && is_prime(n))
}

pub fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

/// A finite field with cheap copyable elements.
pub trait Field: Sync + Send + Clone {
    type E: Copy + PartialEq + Debug + Send + Sync;

    fn modulus(&self) -> u64;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: Self::E) -> bool;
    fn add(&self, a: Self::E, b: Self::E) -> Self::E;
    fn sub(&self, a: Self::E, b: Self::E) -> Self::E;
    fn mul(&self, a: Self::E, b: Self::E) -> Self::E;
    fn neg(&self, a: Self::E) -> Self::E;
    fn inv(&self, a: Self::E) -> Option<Self::E>;
    fn from_u64(&self, a: u64) -> Self::E;
    /// Embed a coefficient; `None` when it has an imaginary part and the field
    /// has no square root of -1.
    fn from_coeff<C: Coeff>(&self, c: &C) -> Option<Self::E>;
    /// `(re, im)` residues.
    fn parts(&self, a: Self::E) -> (u64, u64);

    fn pow(&self, mut a: Self::E, mut e: u64) -> Self::E {
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }
}

impl Field for Fp {
    type E = u64;

    fn modulus(&self) -> u64 {
        self.p
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: u64) -> bool {
        a == 0
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        addmod(a, b, self.p)
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        submod(a, b, self.p)
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        mulmod(a, b, self.p)
    }
    fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: u64) -> Option<u64> {
        invmod(a, self.p)
    }
    fn from_u64(&self, a: u64) -> u64 {
        a % self.p
    }
    fn from_coeff<C: Coeff>(&self, c: &C) -> Option<u64> {
        let im = c.imag_part();
        if !im.is_zero() {
            return None;
        }
        Some(bigint_mod(c.real_part(), self.p))
    }
    fn parts(&self, a: u64) -> (u64, u64) {
        (a, 0)
    }
}

/// `F_p[i] = F_p[t]/(t^2 + 1)`, a field when `p ≡ 3 (mod 4)`.
#[derive(Clone, Copy, Debug)]
pub struct Fp2 {
    pub p: u64,
}

impl Fp2 {
    pub fn new(p: u64) -> Self {
        debug_assert_eq!(p % 4, 3);
        Fp2 { p }
    }
}

impl Field for Fp2 {
    type E = (u64, u64);

    fn modulus(&self) -> u64 {
        self.p
    }
    fn zero(&self) -> Self::E {
        (0, 0)
    }
    fn one(&self) -> Self::E {
        (1, 0)
    }
    fn is_zero(&self, a: Self::E) -> bool {
        a == (0, 0)
    }
    fn add(&self, a: Self::E, b: Self::E) -> Self::E {
        (addmod(a.0, b.0, self.p), addmod(a.1, b.1, self.p))
    }
    fn sub(&self, a: Self::E, b: Self::E) -> Self::E {
        (submod(a.0, b.0, self.p), submod(a.1, b.1, self.p))
    }
    fn mul(&self, a: Self::E, b: Self::E) -> Self::E {
        let p = self.p;
        let re = submod(mulmod(a.0, b.0, p), mulmod(a.1, b.1, p), p);
        let im = addmod(mulmod(a.0, b.1, p), mulmod(a.1, b.0, p), p);
        (re, im)
    }
    fn neg(&self, a: Self::E) -> Self::E {
        (submod(0, a.0, self.p), submod(0, a.1, self.p))
    }
    fn inv(&self, a: Self::E) -> Option<Self::E> {
        let p = self.p;
        let n = addmod(mulmod(a.0, a.0, p), mulmod(a.1, a.1, p), p);
        let ni = invmod(n, p)?;
        Some((mulmod(a.0, ni, p), mulmod(submod(0, a.1, p), ni, p)))
    }
    fn from_u64(&self, a: u64) -> Self::E {
        (a % self.p, 0)
    }
    fn from_coeff<C: Coeff>(&self, c: &C) -> Option<Self::E> {
        Some((bigint_mod(c.real_part(), self.p), bigint_mod(&c.imag_part(), self.p)))
    }
    fn parts(&self, a: Self::E) -> (u64, u64) {
        a
    }
}

/// Dense univariate polynomial kernels, little-endian coefficient vectors.
pub mod dense {
    use super::Field;

    pub fn trim<F: Field>(f: &F, a: &mut Vec<F::E>) {
        while let Some(&last) = a.last() {
            if f.is_zero(last) {
                a.pop();
            } else {
                break;
            }
        }
    }

    /// Degree of a trimmed vector; `None` for zero.
    pub fn degree<E>(a: &[E]) -> Option<usize> {
        a.len().checked_sub(1)
    }

    pub fn eval<F: Field>(f: &F, a: &[F::E], x: F::E) -> F::E {
        a.iter().rev().fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn mul<F: Field>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![f.zero(); a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        trim(f, &mut out);
        out
    }

    pub fn sub<F: Field>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
        let n = a.len().max(b.len());
        let mut out: Vec<F::E> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(f.zero());
                let y = b.get(i).copied().unwrap_or(f.zero());
                f.sub(x, y)
            })
            .collect();
        trim(f, &mut out);
        out
    }

    pub fn add<F: Field>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
        let n = a.len().max(b.len());
        let mut out: Vec<F::E> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(f.zero());
                let y = b.get(i).copied().unwrap_or(f.zero());
                f.add(x, y)
            })
            .collect();
        trim(f, &mut out);
        out
    }

    pub fn scale<F: Field>(f: &F, a: &[F::E], k: F::E) -> Vec<F::E> {
        let mut out: Vec<F::E> = a.iter().map(|&x| f.mul(x, k)).collect();
        trim(f, &mut out);
        out
    }

    /// Quotient and remainder; `b` must be nonzero and trimmed.
    pub fn divrem<F: Field>(f: &F, a: &[F::E], b: &[F::E]) -> (Vec<F::E>, Vec<F::E>) {
        let db = b.len() - 1;
        let inv = f.inv(b[db]).expect("nonzero leading coefficient");
        let mut r = a.to_vec();
        trim(f, &mut r);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![f.zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + db], inv);
            q[k] = c;
            if f.is_zero(c) {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = f.sub(r[k + j], f.mul(c, bj));
            }
        }
        r.truncate(db);
        trim(f, &mut r);
        (q, r)
    }

    pub fn rem<F: Field>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
        divrem(f, a, b).1
    }

    pub fn monic<F: Field>(f: &F, a: &[F::E]) -> Vec<F::E> {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => scale(f, a, f.inv(lc).expect("nonzero")),
        }
    }

    /// Monic gcd (zero for two zero inputs).
    pub fn gcd<F: Field>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(f, &mut x);
        trim(f, &mut y);
        while !y.is_empty() {
            let r = rem(f, &x, &y);
            x = y;
            y = r;
        }
        monic(f, &x)
    }

    /// `(g, s, t)` with `s a + t b = g` monic.
    pub fn ext_gcd<F: Field>(f: &F, a: &[F::E], b: &[F::E]) -> (Vec<F::E>, Vec<F::E>, Vec<F::E>) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        trim(f, &mut r0);
        trim(f, &mut r1);
        let (mut s0, mut s1) = (vec![f.one()], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![f.one()]);
        while !r1.is_empty() {
            let (q, r) = divrem(f, &r0, &r1);
            let s = sub(f, &s0, &mul(f, &q, &s1));
            let t = sub(f, &t0, &mul(f, &q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.last() {
            None => (r0, s0, t0),
            Some(&lc) => {
                let inv = f.inv(lc).expect("nonzero");
                (scale(f, &r0, inv), scale(f, &s0, inv), scale(f, &t0, inv))
            }
        }
    }

    pub fn derivative<F: Field>(f: &F, a: &[F::E]) -> Vec<F::E> {
        let mut out: Vec<F::E> =
            a.iter().enumerate().skip(1).map(|(k, &c)| f.mul(c, f.from_u64(k as u64))).collect();
        trim(f, &mut out);
        out
    }

    /// `a^e mod m`.
    pub fn powmod<F: Field>(f: &F, a: &[F::E], mut e: u128, m: &[F::E]) -> Vec<F::E> {
        let mut base = rem(f, a, m);
        let mut acc = rem(f, &[f.one()], m);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(f, &mul(f, &acc, &base), m);
            }
            e >>= 1;
            if e > 0 {
                base = rem(f, &mul(f, &base, &base), m);
            }
        }
        acc
    }

    /// Resultant of two polynomials with true degrees (both nonzero).
    fn resultant_true<F: Field>(f: &F, a: Vec<F::E>, b: Vec<F::E>) -> F::E {
        let (mut a, mut b) = (a, b);
        let mut acc = f.one();
        loop {
            let m = a.len() - 1;
            let n = b.len() - 1;
            if n == 0 {
                return f.mul(acc, f.pow(b[0], m as u64));
            }
            if m == 0 {
                return f.mul(acc, f.pow(a[0], n as u64));
            }
            if m < n {
                std::mem::swap(&mut a, &mut b);
                if (m * n) % 2 == 1 {
                    acc = f.neg(acc);
                }
                continue;
            }
            let r = rem(f, &a, &b);
            if r.is_empty() {
                return f.zero();
            }
            let k = r.len() - 1;
            // Res_{m,n}(a,b) = (-1)^{mn} lc(b)^{m-k} Res_{n,k}(b,r)
            acc = f.mul(acc, f.pow(b[n], (m - k) as u64));
            if (m * n) % 2 == 1 {
                acc = f.neg(acc);
            }
            a = b;
            b = r;
        }
    }

    /// Resultant with formal degrees `m >= deg a`, `n >= deg b`, as the
    /// determinant of the `(m+n)`-dimensional Sylvester matrix.
    pub fn resultant_formal<F: Field>(f: &F, a: &[F::E], m: usize, b: &[F::E], n: usize) -> F::E {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(f, &mut a);
        trim(f, &mut b);
        if m == 0 && n == 0 {
            return f.one();
        }
        if a.is_empty() || b.is_empty() {
            return f.zero();
        }
        let m1 = a.len() - 1;
        let n1 = b.len() - 1;
        debug_assert!(m1 <= m && n1 <= n);
        let mut acc = f.one();
        if m1 < m {
            // expand along columns where a's formal top coefficients vanish
            let bn = b.get(n).copied().unwrap_or(f.zero());
            acc = f.mul(acc, f.pow(bn, (m - m1) as u64));
            if (n * (m - m1)) % 2 == 1 {
                acc = f.neg(acc);
            }
        }
        if n1 < n {
            acc = f.mul(acc, f.pow(a[m1], (n - n1) as u64));
        }
        if f.is_zero(acc) {
            return acc;
        }
        f.mul(acc, resultant_true(f, a, b))
    }
}

/// Newton interpolation through the points `x = 0, 1, ..., D` applied slot by
/// slot: `values[x][slot]` becomes `coeffs[k][slot]`.
pub fn interpolate_slots<F: Field>(f: &F, values: Vec<Vec<F::E>>) -> Vec<Vec<F::E>> {
    let d = values.len() - 1;
    let slots = values.first().map_or(0, Vec::len);
    let mut c = values;
    for j in 1..=d {
        let inv = f.inv(f.from_u64(j as u64)).expect("interpolation nodes distinct mod p");
        for i in (j..=d).rev() {
            for s in 0..slots {
                let diff = f.sub(c[i][s], c[i - 1][s]);
                c[i][s] = f.mul(diff, inv);
            }
        }
    }
    // Newton form to monomial form, Horner from the top
    let mut poly: Vec<Vec<F::E>> = vec![c[d].clone()];
    for k in (0..d).rev() {
        let node = f.from_u64(k as u64);
        let mut next = vec![vec![f.zero(); slots]; poly.len() + 1];
        for (i, row) in poly.iter().enumerate() {
            for s in 0..slots {
                next[i + 1][s] = f.add(next[i + 1][s], row[s]);
                next[i][s] = f.sub(next[i][s], f.mul(node, row[s]));
            }
        }
        for s in 0..slots {
            next[0][s] = f.add(next[0][s], c[k][s]);
        }
        poly = next;
    }
    poly
}

/// Incremental Chinese remaindering of integer vectors.
#[derive(Clone, Debug)]
pub struct Crt {
    pub modulus: BigInt,
    pub values: Vec<BigInt>,
}

impl Crt {
    pub fn new(len: usize) -> Self {
        Crt { modulus: BigInt::one(), values: vec![BigInt::zero(); len] }
    }

    /// Fold in residues modulo a new prime `p` coprime to the modulus.
    pub fn add(&mut self, residues: &[u64], p: u64) {
        assert_eq!(residues.len(), self.values.len());
        let mp = bigint_mod(&self.modulus, p);
        let inv = invmod(mp, p).expect("moduli coprime");
        for (v, &r) in self.values.iter_mut().zip(residues) {
            let vp = bigint_mod(v, p);
            let t = mulmod(submod(r, vp, p), inv, p);
            if t != 0 {
                *v += &self.modulus * BigInt::from(t);
            }
        }
        self.modulus *= BigInt::from(p);
    }

    /// Values in the symmetric range `(-modulus/2, modulus/2]`.
    pub fn symmetric(&self) -> Vec<BigInt> {
        let half: BigInt = &self.modulus >> 1u32;
        self.values
            .iter()
            .map(|v| if v > &half { v - &self.modulus } else { v.clone() })
            .collect()
    }

    pub fn modulus_bits(&self) -> u64 {
        self.modulus.bits()
    }
}

/// Symmetric representative of `a mod p`.
pub fn symmetric(a: u64, p: u64) -> BigInt {
    if a > p / 2 {
        BigInt::from(a) - BigInt::from(p)
    } else {
        BigInt::from(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u64> = large_primes().take(3).collect();
        assert!(ps.iter().all(|&p| p % 4 == 3 && p < 1 << 62 && is_prime(p)));
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(primes_from(3).take(5).collect::<Vec<_>>(), vec![3, 5, 7, 11, 13]);
        assert!(!is_prime(3215031751));
        assert!(is_prime(1_000_000_007));
    }

    #[test]
    fn inverse() {
        let p = 1_000_000_007;
        for a in [1u64, 2, 12345, p - 1] {
            assert_eq!(mulmod(a, invmod(a, p).unwrap(), p), 1);
        }
        assert_eq!(invmod(0, p), None);
        let f = Fp2::new(1_000_000_007);
        let z = (3, 4);
        assert_eq!(f.mul(z, f.inv(z).unwrap()), (1, 0));
    }

    #[test]
    fn resultant_small() {
        let f = Fp::new(101);
        // Res_x(x - 1, x + 1) = 2
        let r = dense::resultant_formal(&f, &[100, 1], 1, &[1, 1], 1);
        assert_eq!(r, 2);
        // Res_x(x^2 + 1, x - 1) = 2
        let r = dense::resultant_formal(&f, &[1, 0, 1], 2, &[100, 1], 1);
        assert_eq!(r, 2);
        // formal degree larger than actual: Sylvester of (0*x^2 + x - 1, x + 1)
        // det [[0,1,-1],[1,1,0],[0,1,1]] = -2
        let r = dense::resultant_formal(&f, &[100, 1], 2, &[1, 1], 1);
        assert_eq!(r, 101 - 2);
    }

    #[test]
    fn interpolation_recovers() {
        let f = Fp::new(1_000_000_007);
        let coeffs = [5u64, 0, 7, 1];
        let values: Vec<Vec<u64>> =
            (0..4u64).map(|x| vec![dense::eval(&f, &coeffs, x), 3]).collect();
        let c = interpolate_slots(&f, values);
        assert_eq!(c.iter().map(|r| r[0]).collect::<Vec<_>>(), coeffs.to_vec());
        assert_eq!(c.iter().map(|r| r[1]).collect::<Vec<_>>(), vec![3, 0, 0, 0]);
    }

    #[test]
    fn crt_symmetric() {
        let target = [BigInt::from(-123456789012345i64), BigInt::from(987654321987654321i64)];
        let mut crt = Crt::new(2);
        for p in [1_000_000_007u64, 998_244_353, 754_974_721] {
            let res: Vec<u64> = target.iter().map(|t| bigint_mod(t, p)).collect();
            crt.add(&res, p);
        }
        assert_eq!(crt.symmetric(), target.to_vec());
    }

    #[test]
    fn ext_gcd_identity() {
        let f = Fp::new(97);
        let a = vec![1, 0, 1]; // x^2 + 1
        let b = vec![96, 1]; // x - 1
        let (g, s, t) = dense::ext_gcd(&f, &a, &b);
        assert_eq!(g, vec![1]);
        let lhs = dense::add(&f, &dense::mul(&f, &s, &a), &dense::mul(&f, &t, &b));
        assert_eq!(lhs, vec![1]);
    }
}
