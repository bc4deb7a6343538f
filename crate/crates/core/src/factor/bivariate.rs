//! Factorization of squarefree primitive polynomials in ℤ[x][y]:
//! specialize `x = t`, factor over ℤ, lift the factors over ℚ in powers of
//! `s = x - t` with imposed leading coefficients, recombine by trial division.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bipoly::BiPoly;
use super::gcd::coprime_univariate;
use super::univariate::factor_zpoly;
use super::zpoly::ZPoly;

type Q = BigRational;
type QPoly = Vec<Q>;

fn q_trim(mut a: QPoly) -> QPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn q_from(p: &ZPoly) -> QPoly {
    p.coeffs().iter().map(|c| Q::from_integer(c.clone())).collect()
}

fn q_add(a: &[Q], b: &[Q]) -> QPoly {
    let n = a.len().max(b.len());
    q_trim((0..n).map(|i| a.get(i).cloned().unwrap_or_else(Q::zero) + b.get(i).cloned().unwrap_or_else(Q::zero)).collect())
}

fn q_sub(a: &[Q], b: &[Q]) -> QPoly {
    let n = a.len().max(b.len());
    q_trim((0..n).map(|i| a.get(i).cloned().unwrap_or_else(Q::zero) - b.get(i).cloned().unwrap_or_else(Q::zero)).collect())
}

fn q_mul(a: &[Q], b: &[Q]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    q_trim(out)
}

fn q_scale(a: &[Q], k: &Q) -> QPoly {
    q_trim(a.iter().map(|c| c * k).collect())
}

fn q_divrem(a: &[Q], b: &[Q]) -> (QPoly, QPoly) {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (Vec::new(), q_trim(r));
    }
    let mut q = vec![Q::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &b[db];
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    (q_trim(q), q_trim(r))
}

/// `a^{-1} mod m` for coprime `a`, `m`.
fn q_inv_mod(a: &[Q], m: &[Q]) -> QPoly {
    let (mut r0, mut r1) = (m.to_vec(), q_divrem(a, m).1);
    let (mut t0, mut t1): (QPoly, QPoly) = (Vec::new(), vec![Q::one()]);
    while !r1.is_empty() {
        let (q, r) = q_divrem(&r0, &r1);
        let t = q_sub(&t0, &q_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    assert_eq!(r0.len(), 1, "inverse of a non-coprime polynomial");
    let inv = Q::one() / &r0[0];
    q_divrem(&q_scale(&t0, &inv), m).1
}

/// `Σ_{l=0..=k} a[l]·b[k-l]` for series with polynomial coefficients.
fn series_coeff(a: &[QPoly], b: &[QPoly], k: usize) -> QPoly {
    let mut acc = Vec::new();
    for l in 0..=k {
        if let (Some(x), Some(y)) = (a.get(l), b.get(k - l)) {
            acc = q_add(&acc, &q_mul(x, y));
        }
    }
    acc
}

fn series_mul(a: &[QPoly], b: &[QPoly], n: usize) -> Vec<QPoly> {
    (0..n).map(|k| series_coeff(a, b, k)).collect()
}

/// Specialization points tried in order: 0, 1, -1, 2, -2, ...
fn specialization_points() -> impl Iterator<Item = BigInt> {
    (0i64..).map(|k| BigInt::from(if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) }))
}

const SPECIALIZATIONS: usize = 3;
const MAX_POINTS: usize = 256;

struct Specialization {
    t: BigInt,
    factors: Vec<ZPoly>,
}

/// Irreducible factors of a squarefree `f`, primitive over ℤ[x] in `y` and
/// over ℤ[y] in `x`, with `deg_y f ≥ 1`. `None` when no admissible
/// specialization was found.
pub fn factor_squarefree(f: &BiPoly, seed: u64) -> Option<Vec<BiPoly>> {
    let n = f.degree_y();
    if n == 1 || f.degree_x() == 0 {
        return Some(vec![f.clone().normal_sign()]);
    }
    let mut allowed = vec![true; n + 1];
    let mut best: Option<Specialization> = None;
    let mut found = 0;
    for t in specialization_points().take(MAX_POINTS) {
        if found == SPECIALIZATIONS {
            break;
        }
        if f.lc_y().eval(&t).is_zero() {
            continue;
        }
        let ft = f.eval_x(&t);
        if !coprime_univariate(&ft, &ft.derivative()) {
            continue;
        }
        found += 1;
        let (_, fs) = factor_zpoly(&ft, seed);
        let factors: Vec<ZPoly> = fs.into_iter().map(|(q, m)| {
            debug_assert_eq!(m, 1);
            q
        }).collect();
        if factors.len() == 1 {
            return Some(vec![f.clone().normal_sign()]);
        }
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for q in &factors {
            let d = q.degree();
            for s in (d..=n).rev() {
                sums[s] = sums[s] || sums[s - d];
            }
        }
        for (a, s) in allowed.iter_mut().zip(&sums) {
            *a = *a && *s;
        }
        if allowed[1..n].iter().all(|a| !a) {
            return Some(vec![f.clone().normal_sign()]);
        }
        if best.as_ref().is_none_or(|b| factors.len() < b.factors.len()) {
            best = Some(Specialization { t, factors });
        }
    }
    let spec = best?;
    Some(lift_and_recombine(f, &spec, &allowed))
}

fn lift_and_recombine(f: &BiPoly, spec: &Specialization, allowed: &[bool]) -> Vec<BiPoly> {
    let fs = f.shift_x(&spec.t);
    let a = fs.lc_y().clone();
    let n_prec = f.degree_x() + a.degree() + 1;
    let r = spec.factors.len();
    let a_q = |k: usize| Q::from_integer(a.coeff(k));
    let a0 = a_q(0);

    // G_i(0, y) = a(0)/lc(h_i) · h_i
    let g0: Vec<QPoly> = spec
        .factors
        .iter()
        .map(|h| q_scale(&q_from(h), &(&a0 / Q::from_integer(h.lc().clone()))))
        .collect();
    let degs: Vec<usize> = g0.iter().map(|g| g.len() - 1).collect();
    let tau: Vec<QPoly> = (0..r)
        .map(|i| {
            let others = (0..r).filter(|&j| j != i).fold(vec![Q::one()], |acc, j| q_mul(&acc, &g0[j]));
            q_inv_mod(&others, &g0[i])
        })
        .collect();

    // target a^{r-1} · f(s + t, y), truncated
    let mut apow = ZPoly::one();
    for _ in 1..r {
        apow = truncate(&(&apow * &a), n_prec);
    }
    let target: Vec<QPoly> = {
        let cols: Vec<ZPoly> = fs.coeffs().iter().map(|c| truncate(&(c * &apow), n_prec)).collect();
        (0..n_prec)
            .map(|k| q_trim(cols.iter().map(|c| Q::from_integer(c.coeff(k))).collect()))
            .collect()
    };

    let mut g: Vec<Vec<QPoly>> = g0.iter().map(|x| vec![x.clone()]).collect();
    let mut pref: Vec<Vec<QPoly>> = (0..r).map(|_| Vec::new()).collect();
    let prefix = |g: &Vec<Vec<QPoly>>, pref: &mut Vec<Vec<QPoly>>, k: usize| {
        for i in 0..r {
            let v = if i == 0 { g[0][k].clone() } else { series_coeff(&pref[i - 1], &g[i], k) };
            if pref[i].len() == k {
                pref[i].push(v);
            } else {
                pref[i][k] = v;
            }
        }
    };
    prefix(&g, &mut pref, 0);
    for k in 1..n_prec {
        for (i, gi) in g.iter_mut().enumerate() {
            let mut top = vec![Q::zero(); degs[i] + 1];
            top[degs[i]] = a_q(k);
            gi.push(q_trim(top));
        }
        prefix(&g, &mut pref, k);
        let e = q_sub(&target[k], &pref[r - 1][k]);
        if e.is_empty() {
            continue;
        }
        for i in 0..r {
            let sigma = q_divrem(&q_mul(&e, &tau[i]), &g0[i]).1;
            g[i][k] = q_add(&g[i][k], &sigma);
        }
        prefix(&g, &mut pref, k);
    }

    // a^{-1} as a series
    let mut ainv: Vec<Q> = vec![Q::one() / &a0];
    for k in 1..n_prec {
        let s: Q = (1..=k).map(|l| a_q(l) * &ainv[k - l]).sum();
        ainv.push(-s / &a0);
    }
    let ainv_s: Vec<QPoly> = ainv.iter().map(|c| q_trim(vec![c.clone()])).collect();
    let a_s: Vec<QPoly> = (0..n_prec).map(|k| q_trim(vec![a_q(k)])).collect();

    let mut remaining: Vec<usize> = (0..r).collect();
    let mut cur = fs.clone();
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        for subset in subsets(remaining.len(), size) {
            let idx: Vec<usize> = subset.iter().map(|&s| remaining[s]).collect();
            let deg: usize = idx.iter().map(|&i| degs[i]).sum();
            if !allowed[deg] {
                continue;
            }
            let mut prod = a_s.clone();
            for &i in &idx {
                prod = series_mul(&prod, &g[i], n_prec);
                prod = series_mul(&prod, &ainv_s, n_prec);
            }
            let Some(cand) = to_bipoly(&prod, deg) else { continue };
            let cont = cand.content_y();
            let h = cand.div_zpoly_exact(&cont).expect("content divides").normal_sign();
            if h.degree_y() == 0 {
                continue;
            }
            if let Some(q) = cur.div_exact(&h) {
                out.push(h);
                cur = q;
                remaining.retain(|i| !idx.contains(i));
                continue 'outer;
            }
        }
        size += 1;
    }
    if cur.degree_y() > 0 {
        let cont = cur.content_y();
        out.push(cur.div_zpoly_exact(&cont).expect("content divides"));
    }
    let back = -&spec.t;
    out.into_iter().map(|h| h.shift_x(&back).normal_sign()).collect()
}

fn truncate(p: &ZPoly, n: usize) -> ZPoly {
    ZPoly::new(p.coeffs().iter().take(n).cloned().collect())
}

/// Series in `s` with `y`-polynomial coefficients to ℤ[s][y], if integral.
fn to_bipoly(series: &[QPoly], deg_y: usize) -> Option<BiPoly> {
    let mut cols = vec![vec![BigInt::zero(); series.len()]; deg_y + 1];
    for (k, c) in series.iter().enumerate() {
        if c.len() > deg_y + 1 {
            return None;
        }
        for (j, v) in c.iter().enumerate() {
            if !v.is_integer() {
                return None;
            }
            cols[j][k] = v.to_integer();
        }
    }
    Some(BiPoly::new(cols.into_iter().map(ZPoly::new).collect()))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Kronecker substitution `x = z^D`, `D = deg_y f + 1`, followed by
/// univariate factorization and exhaustive recombination. Only sensible for
/// small inputs.
pub fn kronecker(f: &BiPoly, seed: u64) -> Vec<BiPoly> {
    let d = f.degree_y() + 1;
    let mut k = vec![BigInt::zero(); d * (f.degree_x() + 1)];
    for (j, cj) in f.coeffs().iter().enumerate() {
        for (i, c) in cj.coeffs().iter().enumerate() {
            k[i * d + j] = c.clone();
        }
    }
    let (_, fs) = factor_zpoly(&ZPoly::new(k), seed);
    let mut pieces: Vec<ZPoly> = Vec::new();
    for (q, m) in fs {
        for _ in 0..m {
            pieces.push(q.clone());
        }
    }
    let inverse = |p: &ZPoly| {
        let mut cols = vec![vec![BigInt::zero(); p.degree() / d + 1]; d];
        for (e, c) in p.coeffs().iter().enumerate() {
            cols[e % d][e / d] = c.clone();
        }
        BiPoly::new(cols.into_iter().map(ZPoly::new).collect())
    };
    let mut cur = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while size < pieces.len() {
        for subset in subsets(pieces.len(), size) {
            let prod = subset.iter().fold(ZPoly::one(), |acc, &i| &acc * &pieces[i]);
            if prod.degree() >= d * (cur.degree_x() + 1) {
                continue;
            }
            let h = inverse(&prod);
            if h.degree_y() == 0 && h.degree_x() == 0 {
                continue;
            }
            if let Some(q) = cur.div_exact(&h) {
                out.push(h.normal_sign());
                cur = q;
                let mut keep = Vec::new();
                for (i, p) in pieces.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(p);
                    }
                }
                pieces = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if cur.degree_y() > 0 || cur.degree_x() > 0 {
        out.push(cur.normal_sign());
    }
    out
}
