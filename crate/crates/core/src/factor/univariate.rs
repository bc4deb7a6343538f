//! Squarefree decomposition and Zassenhaus factorization in ℤ[x].

use num_bigint::BigInt;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::bipoly::BiPoly;
use super::finite;
use super::gcd::{gcd_bivariate, gcd_univariate};
use super::hensel;
use super::zpoly::ZPoly;
use crate::modp::{bigint_mod, primes_from, Field, Fp};

/// What Yun's algorithm needs from a polynomial domain.
pub trait YunDomain: Sized + Clone {
    fn gcd(&self, o: &Self) -> Self;
    fn deriv(&self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn quo(&self, o: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl YunDomain for ZPoly {
    fn gcd(&self, o: &Self) -> Self {
        gcd_univariate(self, o)
    }
    fn deriv(&self) -> Self {
        self.derivative()
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn quo(&self, o: &Self) -> Self {
        self.div_exact(o).expect("exact division in Yun")
    }
    fn is_unit(&self) -> bool {
        self.degree() == 0
    }
}

impl YunDomain for BiPoly {
    fn gcd(&self, o: &Self) -> Self {
        gcd_bivariate(self, o)
    }
    fn deriv(&self) -> Self {
        self.derivative_y()
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn quo(&self, o: &Self) -> Self {
        self.div_exact(o).expect("exact division in Yun")
    }
    fn is_unit(&self) -> bool {
        self.degree_y() == 0
    }
}

/// Yun's squarefree decomposition of a primitive `f` (content-free in the
/// main variable). Returns `(part, multiplicity)` with nonunit parts only;
/// the parts multiply back to `f` up to sign.
pub fn yun<P: YunDomain>(f: &P) -> Vec<(P, u32)> {
    let mut out = Vec::new();
    if f.is_unit() {
        return out;
    }
    let df = f.deriv();
    let a0 = f.gcd(&df);
    let mut b = f.quo(&a0);
    let c = df.quo(&a0);
    let mut d = c.minus(&b.deriv());
    let mut i = 1;
    while !b.is_unit() {
        let a = b.gcd(&d);
        if !a.is_unit() {
            out.push((a.clone(), i));
        }
        let b2 = b.quo(&a);
        let c2 = d.quo(&a);
        d = c2.minus(&b2.deriv());
        b = b2;
        i += 1;
    }
    out
}

/// Number of admissible primes whose modular factorizations are compared.
const PRIMES_TRIED: usize = 5;

/// Irreducible factors of a primitive squarefree `f` with `deg f ≥ 1` and
/// `f(0) ≠ 0`, each primitive with positive leading coefficient.
pub fn zassenhaus(f: &ZPoly, seed: u64) -> Vec<ZPoly> {
    let n = f.degree();
    if n <= 1 {
        return vec![f.primitive()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // achievable factor degrees, intersected across primes
    let mut allowed = vec![true; n + 1];
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    for p in primes_from(3) {
        if tried == PRIMES_TRIED {
            break;
        }
        if bigint_mod(f.lc(), p) == 0 {
            continue;
        }
        let field = Fp::new(p);
        let fp = f.mod_p(p);
        if !finite::is_squarefree(&field, &fp) {
            continue;
        }
        tried += 1;
        let lc_inv = field.inv(*fp.last().expect("nonzero")).expect("unit");
        let monic: Vec<u64> = fp.iter().map(|&c| field.mul(c, lc_inv)).collect();
        let facs = finite::factor_squarefree(&field, &monic, &mut rng);
        if facs.len() == 1 {
            return vec![f.primitive()];
        }
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for q in &facs {
            let d = q.len() - 1;
            for s in (d..=n).rev() {
                sums[s] = sums[s] || sums[s - d];
            }
        }
        for (a, s) in allowed.iter_mut().zip(&sums) {
            *a = *a && *s;
        }
        if allowed[1..n].iter().all(|a| !a) {
            return vec![f.primitive()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
    }
    let (p, facs) = best.expect("some prime is admissible");
    let bits = hensel::mignotte_bound_bits(f) + 1;
    let pb = BigInt::from(p);
    let mut pk = pb.clone();
    while pk.bits() <= bits {
        pk *= &pb;
    }
    let lifted = hensel::lift(f, &facs, p, &pk);
    hensel::recombine(f, lifted, &pk, &allowed)
}

/// Full factorization of a nonzero polynomial in ℤ[x]: `(unit, factors)`
/// with `f = unit · Π g^m`.
pub fn factor_zpoly(f: &ZPoly, seed: u64) -> (BigInt, Vec<(ZPoly, u32)>) {
    assert!(!f.is_zero(), "factor of zero");
    let (unit, g) = f.content_primitive();
    let mut out = Vec::new();
    let low = g.low_degree();
    if low > 0 {
        out.push((ZPoly::monomial(BigInt::one(), 1), low as u32));
    }
    let g = g.shift_down(low);
    for (part, mult) in yun(&g) {
        let part = part.primitive();
        for q in zassenhaus(&part, seed) {
            out.push((q, mult));
        }
    }
    sort_factors(&mut out);
    (unit, out)
}

pub fn sort_factors(fs: &mut [(ZPoly, u32)]) {
    fs.sort_by(|(a, ma), (b, mb)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
            .then(ma.cmp(mb))
    });
}

#[cfg(test)]
/// Product check used by tests.
pub fn expand(unit: &BigInt, fs: &[(ZPoly, u32)]) -> ZPoly {
    let mut acc = ZPoly::constant(unit.clone());
    for (q, m) in fs {
        for _ in 0..*m {
            acc = &acc * q;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::from_i64(c)
    }

    #[test]
    fn yun_parts() {
        // (x - 1)^2 (x + 2)
        let f = z(&[2, -3, 0, 1]);
        let parts = yun(&f);
        assert_eq!(parts, vec![(z(&[2, 1]), 1), (z(&[-1, 1]), 2)]);
    }

    #[test]
    fn zassenhaus_examples() {
        let (u, fs) = factor_zpoly(&z(&[-2, 1, 6]), 0);
        assert_eq!(u, BigInt::one());
        assert_eq!(fs, vec![(z(&[-1, 2]), 1), (z(&[2, 3]), 1)]);
        let (_, fs) = factor_zpoly(&z(&[1, 0, 0, 0, 1]), 0);
        assert_eq!(fs, vec![(z(&[1, 0, 0, 0, 1]), 1)]);
        let (_, fs) = factor_zpoly(&z(&[0, 0, 0, 1]), 0);
        assert_eq!(fs, vec![(z(&[0, 1]), 3)]);
        // Swinnerton-Dyer style: x^4 - 10x^2 + 1 splits mod every prime
        let (_, fs) = factor_zpoly(&z(&[1, 0, -10, 0, 1]), 0);
        assert_eq!(fs.len(), 1);
        let f = &(&z(&[1, 0, -10, 0, 1]) * &z(&[-3, 0, 1])) * &z(&[-1, -1, 0, 0, 0, 1]).scale(&BigInt::from(-3));
        let (u, fs) = factor_zpoly(&f, 3);
        assert_eq!(expand(&u, &fs), f);
        assert_eq!(fs.len(), 3);
    }
}
