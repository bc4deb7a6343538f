//! Factorization of squarefree polynomials over a prime field `F_p`, `p` odd:
//! distinct-degree splitting followed by Cantor–Zassenhaus.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::modp::{dense, Field, Fp};

/// `gcd(f, f') = 1`; `f` must be nonconstant.
pub fn is_squarefree(field: &Fp, f: &[u64]) -> bool {
    let d = dense::derivative(field, f);
    !d.is_empty() && dense::gcd(field, f, &d).len() == 1
}

/// `(g_d, d)` where `g_d` is the product of the monic irreducible factors of
/// degree `d`. `f` must be monic and squarefree.
pub fn distinct_degree(field: &Fp, f: &[u64]) -> Vec<(Vec<u64>, usize)> {
    let p = field.modulus() as u128;
    let x = vec![0, 1];
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let mut h = x.clone();
    let mut d = 0;
    while f.len() > 1 && 2 * (d + 1) < f.len() {
        d += 1;
        h = dense::powmod(field, &h, p, &f);
        let g = dense::gcd(field, &dense::sub(field, &h, &x), &f);
        if g.len() > 1 {
            f = dense::divrem(field, &f, &g).0;
            h = dense::rem(field, &h, &f);
            out.push((g, d));
        }
    }
    if f.len() > 1 {
        let n = f.len() - 1;
        out.push((f, n));
    }
    out
}

/// Split a monic product of distinct irreducibles of degree `d`.
pub fn equal_degree(field: &Fp, g: &[u64], d: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let n = g.len() - 1;
    if n == d {
        return vec![g.to_vec()];
    }
    let p = field.modulus();
    loop {
        let a: Vec<u64> = {
            let mut a: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
            dense::trim(field, &mut a);
            a
        };
        if a.len() < 2 {
            continue;
        }
        // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
        let mut t = a.clone();
        let mut s = a.clone();
        for _ in 1..d {
            t = dense::powmod(field, &t, p as u128, g);
            s = dense::rem(field, &dense::mul(field, &s, &t), g);
        }
        let b = dense::powmod(field, &s, ((p - 1) / 2) as u128, g);
        let b1 = dense::sub(field, &b, &[1]);
        let h = dense::gcd(field, &b1, g);
        if h.len() > 1 && h.len() < g.len() {
            let q = dense::divrem(field, g, &h).0;
            let mut out = equal_degree(field, &h, d, rng);
            out.extend(equal_degree(field, &q, d, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a monic squarefree `f`, sorted.
pub fn factor_squarefree(field: &Fp, f: &[u64], rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(field, f) {
        out.extend(equal_degree(field, &g, d, rng));
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factors_multiply_back() {
        let field = Fp::new(101);
        // (x + 1)(x + 2)(x^2 + 2)(x^3 + x + 1) over F_101
        let parts = [vec![1, 1], vec![2, 1], vec![2, 0, 1], vec![1, 1, 0, 1]];
        let f = parts.iter().fold(vec![1u64], |acc, q| dense::mul(&field, &acc, q));
        assert!(is_squarefree(&field, &f));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fs = factor_squarefree(&field, &f, &mut rng);
        let back = fs.iter().fold(vec![1u64], |acc, q| dense::mul(&field, &acc, q));
        assert_eq!(back, f);
        assert!(fs.len() >= 4);
        // x^4 + 1 splits into linear factors mod 17
        let g = vec![1, 0, 0, 0, 1];
        let f17 = Fp::new(17);
        assert_eq!(factor_squarefree(&f17, &g, &mut rng).len(), 4);
        // and into quadratics mod 3
        assert_eq!(factor_squarefree(&Fp::new(3), &g, &mut rng).len(), 2);
    }
}
