//! Multifactor quadratic Hensel lifting modulo `p^k` and Zassenhaus subset
//! recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::zpoly::ZPoly;
use crate::modp::{dense, Fp};

/// Polynomials with coefficients reduced into `[0, m)`.
struct ModRing<'a> {
    m: &'a BigInt,
}

impl ModRing<'_> {
    fn reduce(&self, a: &[BigInt]) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = a.iter().map(|c| c.mod_floor(self.m)).collect();
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.reduce(&out)
    }

    fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let v: Vec<BigInt> = (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
            .collect();
        self.reduce(&v)
    }

    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let v: Vec<BigInt> = (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
            .collect();
        self.reduce(&v)
    }

    /// Division by a monic `b`.
    fn divrem(&self, a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let db = b.len() - 1;
        debug_assert!(b[db].is_one());
        let mut r = self.reduce(a);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![BigInt::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = r[k + db].mod_floor(self.m);
            if !c.is_zero() {
                for (j, bj) in b.iter().enumerate() {
                    r[k + j] -= &c * bj;
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        (self.reduce(&q), self.reduce(&r))
    }

    fn make_monic(&self, a: &[BigInt]) -> Vec<BigInt> {
        let lc = a.last().expect("nonzero");
        let inv = mod_inverse(lc, self.m).expect("leading coefficient invertible");
        self.reduce(&a.iter().map(|c| c * &inv).collect::<Vec<_>>())
    }
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

fn to_big(a: &[u64]) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic step: from `f ≡ g h`, `s g + t h ≡ 1 (mod m)` to the same
/// relations modulo `m2` (a divisor of `m²`). `h` is monic.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    ring: &ModRing,
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let e = ring.sub(f, &ring.mul(g, h));
    let (q, r) = ring.divrem(&ring.mul(s, &e), h);
    let g2 = ring.add(g, &ring.add(&ring.mul(t, &e), &ring.mul(&q, g)));
    let h2 = ring.add(h, &r);
    let b = ring.sub(&ring.add(&ring.mul(s, &g2), &ring.mul(t, &h2)), &[BigInt::one()]);
    let (c, d) = ring.divrem(&ring.mul(s, &b), &h2);
    let s2 = ring.sub(s, &d);
    let t2 = ring.sub(t, &ring.add(&ring.mul(t, &b), &ring.mul(&c, &g2)));
    (g2, h2, s2, t2)
}

/// Lift the monic factorization `f ≡ lc(f) Π factors (mod p)` to modulus
/// `p^k = pk`. Returns monic lifts in the order given.
pub fn lift(f: &ZPoly, factors: &[Vec<u64>], p: u64, pk: &BigInt) -> Vec<Vec<BigInt>> {
    let ring = ModRing { m: pk };
    let fm = ring.make_monic(f.coeffs());
    lift_tree(&fm, factors, p, pk)
}

fn lift_tree(f: &[BigInt], factors: &[Vec<u64>], p: u64, pk: &BigInt) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![f.to_vec()];
    }
    let field = Fp::new(p);
    let mid = factors.len() / 2;
    let prod = |fs: &[Vec<u64>]| fs.iter().fold(vec![1u64], |acc, q| dense::mul(&field, &acc, q));
    let g0 = prod(&factors[..mid]);
    let h0 = prod(&factors[mid..]);
    let (one, s0, t0) = dense::ext_gcd(&field, &g0, &h0);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h, mut s, mut t) = (to_big(&g0), to_big(&h0), to_big(&s0), to_big(&t0));
    let mut m = BigInt::from(p);
    while &m < pk {
        let m2 = (&m * &m).min(pk.clone());
        let ring = ModRing { m: &m2 };
        let fr = ring.reduce(f);
        (g, h, s, t) = hensel_step(&ring, &fr, &g, &h, &s, &t);
        m = m2;
    }
    let mut out = lift_tree(&g, &factors[..mid], p, pk);
    out.extend(lift_tree(&h, &factors[mid..], p, pk));
    out
}

/// `2^n · |lc f| · ||f||_2` rounded up to a power of two: every factor `h`
/// of `f`, scaled to `lc(f)/lc(h) · h`, has coefficients below it.
pub fn mignotte_bound_bits(f: &ZPoly) -> u64 {
    f.degree() as u64 + f.lc().bits() + f.l2_norm_bits()
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half: BigInt = m >> 1u32;
    a.iter().map(|c| if c > &half { c - m } else { c.clone() }).collect()
}

fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = idx.clone();
        // advance to the next combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Recover the irreducible factors of the primitive squarefree `f` from its
/// monic lifts modulo `pk`. `allowed` lists the achievable factor degrees.
pub fn recombine(f: &ZPoly, lifted: Vec<Vec<BigInt>>, pk: &BigInt, allowed: &[bool]) -> Vec<ZPoly> {
    let bound = BigInt::one() << mignotte_bound_bits(f);
    let ring = ModRing { m: pk };
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut cur = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        for subset in combinations(remaining.len(), size) {
            let deg: usize = subset.iter().map(|&i| remaining[i].len() - 1).sum();
            if !allowed.get(deg).copied().unwrap_or(false) {
                continue;
            }
            let lc = cur.lc().clone();
            // constant term test before forming the product
            let c0 = subset.iter().fold(lc.clone(), |acc, &i| (acc * &remaining[i][0]).mod_floor(pk));
            let c0 = symmetric(&[c0], pk).pop().expect("one value");
            let f0 = &lc * cur.coeff(0);
            if c0.is_zero() || !(&f0 % &c0).is_zero() {
                continue;
            }
            let prod = subset.iter().fold(vec![lc.clone()], |acc, &i| ring.mul(&acc, &remaining[i]));
            let cand = ZPoly::new(symmetric(&prod, pk));
            let g = cand.primitive();
            if let Some(q) = cur.div_exact(&g) {
                debug_assert!(cand.max_abs() <= bound, "factor exceeds the Mignotte bound");
                found.push(g);
                cur = q;
                let mut keep = Vec::new();
                for (i, r) in remaining.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(r);
                    }
                }
                remaining = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if cur.degree() > 0 {
        found.push(cur.primitive());
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_enumerate() {
        let all: Vec<Vec<usize>> = combinations(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
        assert_eq!(combinations(3, 0).count(), 1);
    }

    #[test]
    fn lifts_are_congruent() {
        // x^2 - 2 = (x - 3)(x + 3) mod 7
        let f = ZPoly::from_i64(&[-2, 0, 1]);
        let pk = BigInt::from(7).pow(10);
        let lifts = lift(&f, &[vec![4, 1], vec![3, 1]], 7, &pk);
        let ring = ModRing { m: &pk };
        let prod = ring.mul(&lifts[0], &lifts[1]);
        assert_eq!(prod, ring.reduce(f.coeffs()));
    }
}
