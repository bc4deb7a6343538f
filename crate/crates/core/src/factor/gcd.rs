//! Modular gcds: univariate over ℤ and bivariate (Brown's algorithm).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::bipoly::BiPoly;
use super::zpoly::ZPoly;
use crate::modp::{bigint_mod, dense, large_primes, Crt, Field, Fp};

fn normal(p: &ZPoly) -> ZPoly {
    if !p.is_zero() && p.lc().is_negative() {
        -p
    } else {
        p.clone()
    }
}

/// Gcd in ℤ[x] with positive leading coefficient.
pub fn gcd_univariate(f: &ZPoly, g: &ZPoly) -> ZPoly {
    if f.is_zero() {
        return normal(g);
    }
    if g.is_zero() {
        return normal(f);
    }
    let (cf, f1) = f.content_primitive();
    let (cg, g1) = g.content_primitive();
    let c = ZPoly::constant(cf.abs().gcd(&cg.abs()));
    if f1.is_constant() || g1.is_constant() {
        return c;
    }
    if f1 == g1 {
        return &f1 * &c;
    }
    let gamma = f1.lc().gcd(g1.lc());
    let mut best: Option<(usize, Crt)> = None;
    let mut prev: Option<Vec<BigInt>> = None;
    for p in large_primes() {
        let gp = bigint_mod(&gamma, p);
        if gp == 0 {
            continue;
        }
        let (fp, gq) = (f1.mod_p(p), g1.mod_p(p));
        if fp.len() != f1.coeffs().len() || gq.len() != g1.coeffs().len() {
            continue;
        }
        let field = Fp::new(p);
        let h = dense::gcd(&field, &fp, &gq);
        let d = h.len() - 1;
        if d == 0 {
            return c;
        }
        match &best {
            Some((bd, _)) if d > *bd => continue,
            Some((bd, _)) if d == *bd => {}
            _ => {
                best = Some((d, Crt::new(d + 1)));
                prev = None;
            }
        }
        let scaled = dense::scale(&field, &h, gp);
        let crt = &mut best.as_mut().expect("initialized").1;
        crt.add(&scaled, p);
        let cand = crt.symmetric();
        if prev.as_ref() == Some(&cand) {
            let h = ZPoly::new(cand.clone()).primitive();
            if h.divides(&f1) && h.divides(&g1) {
                return &h * &c;
            }
        }
        prev = Some(cand);
    }
    unreachable!("prime supply is unbounded")
}

/// Newton interpolation through `(nodes[i], vals[i])` modulo `p`.
fn interpolate(field: &Fp, nodes: &[u64], vals: &[u64]) -> Vec<u64> {
    let n = nodes.len();
    let mut c = vals.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let den = field.inv(field.sub(nodes[i], nodes[i - j])).expect("distinct nodes");
            c[i] = field.mul(field.sub(c[i], c[i - 1]), den);
        }
    }
    let mut poly = vec![c[n - 1]];
    for k in (0..n - 1).rev() {
        let mut next = vec![0u64; poly.len() + 1];
        for (i, &v) in poly.iter().enumerate() {
            next[i + 1] = field.add(next[i + 1], v);
            next[i] = field.sub(next[i], field.mul(nodes[k], v));
        }
        next[0] = field.add(next[0], c[k]);
        poly = next;
    }
    poly
}

/// Gcd in ℤ[x][y], normalized so the leading coefficient of its leading
/// `y`-coefficient is positive.
pub fn gcd_bivariate(f: &BiPoly, g: &BiPoly) -> BiPoly {
    if f.is_zero() {
        return g.clone().normal_sign();
    }
    if g.is_zero() {
        return f.clone().normal_sign();
    }
    let cf = f.content_y();
    let cg = g.content_y();
    let c = gcd_univariate(&cf, &cg);
    let f1 = f.div_zpoly_exact(&cf).expect("content divides");
    let g1 = g.div_zpoly_exact(&cg).expect("content divides");
    if f1.degree_y() == 0 || g1.degree_y() == 0 {
        return BiPoly::from_zpoly(c);
    }
    let gamma = gcd_univariate(f1.lc_y(), g1.lc_y());
    let npts = f1.degree_x().min(g1.degree_x()) + gamma.degree() + 1;
    let (fy, gy) = (f1.degree_y(), g1.degree_y());
    let mut best: Option<(usize, Crt)> = None;
    let mut prev: Option<Vec<BigInt>> = None;
    // first evaluation node minus one; moved past the current nodes whenever
    // a stable candidate fails the division test (unlucky nodes)
    let mut start = 0u64;
    for p in large_primes() {
        let gam = gamma.mod_p(p);
        if gam.len() != gamma.coeffs().len()
            || f1.lc_y().mod_p(p).is_empty()
            || g1.lc_y().mod_p(p).is_empty()
        {
            continue;
        }
        let field = Fp::new(p);
        let mut nodes = Vec::with_capacity(npts);
        let mut images: Vec<Vec<u64>> = Vec::with_capacity(npts);
        let mut dmin = usize::MAX;
        let mut a = start;
        while nodes.len() < npts {
            a += 1;
            let ga = dense::eval(&field, &gam, a);
            if ga == 0 {
                continue;
            }
            let mut fa = f1.eval_x_mod(a, p);
            let mut gb = g1.eval_x_mod(a, p);
            dense::trim(&field, &mut fa);
            dense::trim(&field, &mut gb);
            if fa.len() != fy + 1 || gb.len() != gy + 1 {
                continue;
            }
            let h = dense::gcd(&field, &fa, &gb);
            let d = h.len() - 1;
            if d == 0 {
                return BiPoly::from_zpoly(c);
            }
            if d > dmin {
                continue;
            }
            if d < dmin {
                dmin = d;
                nodes.clear();
                images.clear();
            }
            nodes.push(a);
            images.push(dense::scale(&field, &h, ga));
        }
        let d = dmin;
        // slot layout: y-degree j, x-degree i at j * npts + i
        let mut flat = vec![0u64; (d + 1) * npts];
        for j in 0..=d {
            let vals: Vec<u64> = images.iter().map(|h| h[j]).collect();
            let coeffs = interpolate(&field, &nodes, &vals);
            flat[j * npts..j * npts + coeffs.len()].copy_from_slice(&coeffs);
        }
        match &best {
            Some((bd, _)) if d > *bd => continue,
            Some((bd, _)) if d == *bd => {}
            _ => {
                best = Some((d, Crt::new(flat.len())));
                prev = None;
            }
        }
        let crt = &mut best.as_mut().expect("initialized").1;
        crt.add(&flat, p);
        let cand = crt.symmetric();
        if prev.as_ref() == Some(&cand) {
            let h = BiPoly::new(cand.chunks(npts).map(|ch| ZPoly::new(ch.to_vec())).collect());
            let h = h.div_zpoly_exact(&h.content_y()).expect("content divides").normal_sign();
            if f1.div_exact(&h).is_some() && g1.div_exact(&h).is_some() {
                return h.scale(&c);
            }
            start = a;
            best = None;
            prev = None;
            continue;
        }
        prev = Some(cand);
    }
    unreachable!("prime supply is unbounded")
}

/// Whether the gcd of `f` and `g` is a nonzero constant.
pub fn coprime_univariate(f: &ZPoly, g: &ZPoly) -> bool {
    let h = gcd_univariate(f, g);
    h.is_constant() && !h.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::from_i64(c)
    }

    #[test]
    fn univariate_gcds() {
        let a = z(&[1, 1]);
        let b = z(&[-2, 1]);
        let c = z(&[3, 0, 5]);
        let f = &(&a * &a) * &(&b * &c.scale(&BigInt::from(6)));
        let g = &(&a * &c) * &z(&[7, 1]).scale(&BigInt::from(-4));
        assert_eq!(gcd_univariate(&f, &g), (&a * &c).scale(&BigInt::from(2)));
        assert_eq!(gcd_univariate(&z(&[1, 1]), &z(&[-1, 1])), ZPoly::one());
        assert_eq!(gcd_univariate(&ZPoly::zero(), &z(&[-3, -6])), z(&[3, 6]));
    }

    #[test]
    fn bivariate_gcd() {
        // f = (x y + 1)(y - x^2), g = (x y + 1)(2 y + 3) * x
        let u = BiPoly::new(vec![z(&[1]), z(&[0, 1])]);
        let v = BiPoly::new(vec![z(&[0, 0, -1]), z(&[1])]);
        let w = BiPoly::new(vec![z(&[3]), z(&[2])]);
        let f = u.mul(&v);
        let g = u.mul(&w).scale(&z(&[0, 1]));
        assert_eq!(gcd_bivariate(&f, &g), u);
        assert_eq!(gcd_bivariate(&v, &w), BiPoly::from_zpoly(ZPoly::one()));
        let h = gcd_bivariate(&f.scale(&z(&[1, 1])), &g.scale(&z(&[1, 1])));
        assert_eq!(h, u.scale(&z(&[1, 1])));
    }

    #[test]
    fn unlucky_first_node() {
        // y^2 + 2x - 2 and 2y share a factor y only at x = 1
        let f = BiPoly::new(vec![z(&[-2, 2]), z(&[0]), z(&[1])]);
        let g = BiPoly::new(vec![z(&[0]), z(&[2])]);
        assert_eq!(gcd_bivariate(&f, &g), BiPoly::from_zpoly(ZPoly::one()));
    }
}
