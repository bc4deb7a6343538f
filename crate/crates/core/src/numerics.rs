//! Multiprecision complex root finding and witness-based factor selection.
//!
//! Roots come from Aberth–Ehrlich simultaneous iteration: a warm-up in
//! double precision, then refinement at doubling binary precisions until the
//! target is reached. Residuals are reported relative to the absolute-value
//! polynomial `Σ |c_k| |z|^k`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use thiserror::Error;

use crate::coeff::Coeff;
use crate::factor::{gcd_univariate, ZPoly};
use crate::float::{BigFloat, ComplexBF, MIN_PRECISION};
use crate::par;
use crate::poly::{Assignment, IntPoly, MultiPoly, Var};

pub const DEFAULT_PRECISION: u32 = 256;
/// `tol_circle = 2^-64`.
pub const DEFAULT_TOL_CIRCLE_BITS: u32 = 64;
/// `tol_select = 2^-40`.
pub const DEFAULT_TOL_SELECT_BITS: u32 = 40;
/// The winning score must beat the runner-up by this many bits.
pub const SELECT_GAP_BITS: f64 = 16.0;

const MAX_ITERATIONS: usize = 1000;
const WARMUP_ITERATIONS: usize = 300;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("root finding did not converge for {poly} at {precision} bits")]
    NonConvergence { poly: String, precision: u32 },
    #[error(
        "ambiguous factor selection: best score {} vs runner-up {}; supply --factor-index or a better witness",
        fmt_score(*.best),
        fmt_score(*.runner_up)
    )]
    Ambiguous { best: Option<f64>, runner_up: Option<f64> },
    #[error("no factor vanishes at the witness (best score {}, tolerance 2^-{tol_bits})", fmt_score(*.best))]
    NoVanishing { best: Option<f64>, tol_bits: u32 },
    #[error("branch tracking diverged at {at}")]
    BranchDivergence { at: String },
    #[error("empty factor list")]
    NoFactors,
    #[error("polynomial is not univariate: {0}")]
    NotUnivariate(String),
    #[error("polynomial is constant: {0}")]
    Constant(String),
    #[error("no value for variable {0}")]
    MissingVariable(Var),
}

fn fmt_score(s: Option<f64>) -> String {
    match s {
        Some(x) => format!("2^{x:.1}"),
        None => "0".into(),
    }
}

/// Roots of a polynomial with their relative residuals.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<ComplexBF>,
    /// `|p(z)| / Σ |c_k| |z|^k` for each root, in the same order.
    pub residuals: Vec<BigFloat>,
}

impl RootSet {
    /// Largest residual as a base-2 logarithm; `-inf` when all vanish.
    pub fn max_residual_log2(&self) -> f64 {
        self.residuals.iter().map(BigFloat::log2_abs).fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Squarefree part of a nonzero integer polynomial.
pub fn squarefree_part(p: &ZPoly) -> ZPoly {
    let g = gcd_univariate(p, &p.derivative());
    p.div_exact(&g).expect("gcd divides").primitive()
}

fn univariate_zpoly(p: &IntPoly) -> Result<ZPoly, NumericsError> {
    let support = p.support();
    if support.len() > 1 {
        return Err(NumericsError::NotUnivariate(p.to_string()));
    }
    let v = support.iter().next().ok_or_else(|| NumericsError::Constant(p.to_string()))?;
    Ok(ZPoly::from_multi(p, v).expect("univariate"))
}

/// All distinct complex roots of a univariate integer polynomial. The
/// squarefree part is taken first; a root at zero is returned exactly.
pub fn complex_roots(p: &IntPoly, precision: u32) -> Result<RootSet, NumericsError> {
    let z = univariate_zpoly(p)?;
    if z.degree() == 0 {
        return Err(NumericsError::Constant(p.to_string()));
    }
    zpoly_roots(&z, precision).map_err(|_| NumericsError::NonConvergence { poly: p.to_string(), precision })
}

/// [`complex_roots`] on a dense polynomial.
pub fn zpoly_roots(p: &ZPoly, precision: u32) -> Result<RootSet, NumericsError> {
    let precision = precision.max(MIN_PRECISION);
    let low = p.low_degree();
    let core = squarefree_part(&p.shift_down(low));
    let guard = 32 + core.max_abs().bits() as u32;
    let wp = precision + guard;
    let coeffs: Vec<ComplexBF> = core.coeffs().iter().map(|c| ComplexBF::from_int(c, wp)).collect();
    let mut set = if core.degree() == 0 {
        RootSet { roots: Vec::new(), residuals: Vec::new() }
    } else {
        roots_of(&coeffs, precision, guard).map_err(|_| NumericsError::NonConvergence {
            poly: core.to_multi(Var::M).to_string(),
            precision,
        })?
    };
    if low > 0 {
        set.roots.push(ComplexBF::zero(precision));
        set.residuals.push(BigFloat::zero(MIN_PRECISION));
    }
    Ok(set)
}

/// Roots of a polynomial with complex coefficients (little-endian, nonzero
/// leading and constant coefficients). Roots must be simple for the
/// convergence guarantee; `guard` extra bits are carried internally.
pub fn roots_of(coeffs: &[ComplexBF], precision: u32, guard: u32) -> Result<RootSet, NumericsError> {
    let n = coeffs.len() - 1;
    assert!(n >= 1, "roots of a constant");
    let mut roots = warmup(coeffs);
    let target = precision + guard;
    let mut wp = (MIN_PRECISION + guard).min(target);
    loop {
        let c: Vec<ComplexBF> = coeffs.iter().map(|x| x.with_prec(wp)).collect();
        roots = roots.into_iter().map(|z| z.with_prec(wp)).collect();
        aberth(&c, &mut roots, wp).ok_or(NumericsError::NonConvergence { poly: String::new(), precision: wp })?;
        if wp == target {
            break;
        }
        wp = (2 * wp).min(target);
    }
    let residuals = par::map_slice(&roots, |z| relative_residual(coeffs, &z.with_prec(precision), target));
    let roots = roots.into_iter().map(|z| z.with_prec(precision)).collect();
    Ok(RootSet { roots, residuals })
}

/// `|p(z)| / Σ |c_k| |z|^k`, evaluated at precision `wp`.
pub fn relative_residual(coeffs: &[ComplexBF], z: &ComplexBF, wp: u32) -> BigFloat {
    let z = z.with_prec(wp);
    let az = z.abs();
    let mut val = ComplexBF::zero(wp);
    let mut scale = BigFloat::zero(wp);
    for c in coeffs.iter().rev() {
        val = &(&val * &z) + &c.with_prec(wp);
        scale = &(&scale * &az) + &c.with_prec(wp).abs();
    }
    if scale.is_zero() {
        return BigFloat::zero(MIN_PRECISION);
    }
    (&val.abs() / &scale).with_prec(MIN_PRECISION)
}

fn horner_with_derivative(c: &[ComplexBF], z: &ComplexBF) -> (ComplexBF, ComplexBF) {
    let prec = z.prec();
    let mut p = ComplexBF::zero(prec);
    let mut dp = ComplexBF::zero(prec);
    for a in c.iter().rev() {
        dp = &(&dp * z) + &p;
        p = &(&p * z) + a;
    }
    (p, dp)
}

/// Aberth iteration at precision `wp` until every correction is below
/// `2^(1 - wp/2) |z|`, followed by one more sweep. `None` past the cap.
fn aberth(c: &[ComplexBF], roots: &mut [ComplexBF], wp: u32) -> Option<()> {
    let n = roots.len();
    let tol = 1.0 - wp as f64 / 2.0;
    let mut extra = false;
    for _ in 0..MAX_ITERATIONS {
        let current: &[ComplexBF] = roots;
        let steps: Vec<(ComplexBF, bool)> = par::map_range(n, |i| {
            let z = &current[i];
            let (p, dp) = horner_with_derivative(c, z);
            if p.is_zero() {
                return (ComplexBF::zero(wp), true);
            }
            let ratio = &p / &dp;
            let mut s = ComplexBF::zero(wp);
            for (j, zj) in current.iter().enumerate() {
                if j != i {
                    s = &s + &(z - zj).recip();
                }
            }
            let denom = &ComplexBF::one(wp) - &(&ratio * &s);
            let w = &ratio / &denom;
            let small = w.log2_abs() < tol + z.log2_abs();
            (w, small)
        });
        let done = steps.iter().all(|(_, s)| *s);
        for (z, (w, _)) in roots.iter_mut().zip(steps) {
            *z = &*z - &w;
        }
        if extra {
            return Some(());
        }
        extra = done;
    }
    None
}

/// Double-precision warm-up from a perturbed circle. Falls back to the
/// circle itself when the coefficients leave the f64 range.
fn warmup(coeffs: &[ComplexBF]) -> Vec<ComplexBF> {
    let n = coeffs.len() - 1;
    let top = coeffs.iter().map(ComplexBF::log2_abs).fold(f64::NEG_INFINITY, f64::max);
    let shift = -(top.floor() as i64);
    let c: Vec<Complex64> = coeffs
        .iter()
        .map(|x| {
            let (re, im) = x.mul_pow2(shift).to_f64_pair();
            Complex64::new(re, im)
        })
        .collect();
    // geometric mean of the root moduli
    let radius = 2f64.powf((coeffs[0].log2_abs() - coeffs[n].log2_abs()) / n as f64);
    let start: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * (k as f64 + 0.25) / n as f64 + 0.4;
            let r = radius * (1.0 + 0.05 * ((k % 3) as f64 - 1.0));
            Complex64::from_polar(r, theta)
        })
        .collect();
    let usable = radius.is_finite() && radius > 0.0 && c[0] != Complex64::zero() && c[n] != Complex64::zero();
    let mut z = start.clone();
    if usable {
        for _ in 0..WARMUP_ITERATIONS {
            let mut done = true;
            for i in 0..n {
                let ratio = newton_ratio_f64(&c, z[i]);
                let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
                let w = ratio / (1.0 - ratio * s);
                if !w.is_finite() {
                    continue;
                }
                if w.norm() > 1e-15 * z[i].norm() {
                    done = false;
                }
                // Gauss–Seidel within the warm-up
                z[i] -= w;
            }
            if done {
                break;
            }
        }
    }
    if z.iter().any(|x| !x.is_finite() || x.norm() == 0.0) {
        z = start;
    }
    z.into_iter().map(|x| ComplexBF::from_f64(x.re, x.im, MIN_PRECISION)).collect()
}

/// `p(z) / p'(z)`, through the reversed polynomial when `|z| > 1`.
fn newton_ratio_f64(c: &[Complex64], z: Complex64) -> Complex64 {
    let n = c.len() - 1;
    if z.norm() <= 1.0 {
        let (mut p, mut dp) = (Complex64::zero(), Complex64::zero());
        for &a in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        return p / dp;
    }
    let w = z.inv();
    let (mut q, mut dq) = (Complex64::zero(), Complex64::zero());
    for &a in c.iter() {
        dq = dq * w + q;
        q = q * w + a;
    }
    z * q / (n as f64 * q - w * dq)
}

/// Argument in `[0, 2π)`.
pub fn arg_positive(z: &ComplexBF) -> BigFloat {
    let a = z.arg();
    if a.is_negative() {
        &a + &BigFloat::pi(a.prec()).mul_pow2(1)
    } else {
        a
    }
}

/// Roots `r` of a univariate polynomial with `||r| - 1| < 2^-tol_bits`,
/// sorted by argument in `[0, 2π)`.
pub fn unit_circle_roots(p: &IntPoly, precision: u32, tol_bits: u32) -> Result<Vec<ComplexBF>, NumericsError> {
    let set = complex_roots(p, precision)?;
    Ok(filter_unit_circle(set.roots, tol_bits))
}

pub fn filter_unit_circle(roots: Vec<ComplexBF>, tol_bits: u32) -> Vec<ComplexBF> {
    let mut out: Vec<(BigFloat, ComplexBF)> = roots
        .into_iter()
        .filter(|r| {
            let one = BigFloat::one(r.prec());
            (&r.abs() - &one).log2_abs() < -(tol_bits as f64)
        })
        .map(|r| (arg_positive(&r), r))
        .collect();
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
    out.into_iter().map(|(_, r)| r).collect()
}

/// `log2(|f(pt)| / Σ |c| |pt^m|)`; `None` when `f(pt)` is exactly zero.
pub type Score = Option<f64>;

pub fn vanishing_score<C: Coeff>(f: &MultiPoly<C>, point: &Assignment) -> Result<Score, NumericsError> {
    let val = f.evaluate(point).map_err(|e| match e {
        crate::poly::PolyError::MissingVariable(v) => NumericsError::MissingVariable(v),
    })?;
    if val.is_zero() {
        return Ok(None);
    }
    let prec = point.values().map(ComplexBF::prec).max().unwrap_or(MIN_PRECISION);
    let moduli: Vec<(Var, BigFloat)> = point.iter().map(|(v, z)| (*v, z.abs())).collect();
    let mut scale = BigFloat::zero(prec);
    for (m, c) in f.iter() {
        let mut t = c.to_complex(prec).abs();
        for (v, a) in &moduli {
            for _ in 0..m.exp(*v) {
                t = &t * a;
            }
        }
        scale = &scale + &t;
    }
    Ok(Some(val.log2_abs() - scale.log2_abs()))
}

fn score_lt(a: &Score, b: &Score) -> bool {
    match (a, b) {
        (None, None) => false,
        (None, Some(_)) => true,
        (Some(_), None) => false,
        (Some(x), Some(y)) => x < y,
    }
}

/// Outcome of [`select_factor`].
#[derive(Clone, Debug, PartialEq)]
pub struct Selection {
    pub index: usize,
    pub scores: Vec<Score>,
}

/// Pick the factor vanishing at `point`. The best score must be below
/// `2^-tol_bits` and beat the runner-up by [`SELECT_GAP_BITS`]; a single
/// factor is returned unconditionally.
pub fn select_factor<C: Coeff>(
    factors: &[MultiPoly<C>],
    point: &Assignment,
    tol_bits: u32,
) -> Result<Selection, NumericsError> {
    if factors.is_empty() {
        return Err(NumericsError::NoFactors);
    }
    let scores: Vec<Score> = par::map_slice(factors, |f| vanishing_score(f, point)).into_iter().collect::<Result<_, _>>()?;
    if factors.len() == 1 {
        return Ok(Selection { index: 0, scores });
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| {
        if score_lt(&scores[a], &scores[b]) {
            Ordering::Less
        } else if score_lt(&scores[b], &scores[a]) {
            Ordering::Greater
        } else {
            a.cmp(&b)
        }
    });
    let (best, second) = (scores[order[0]], scores[order[1]]);
    if best.is_some_and(|b| b >= -(tol_bits as f64)) {
        return Err(NumericsError::NoVanishing { best, tol_bits });
    }
    let separated = match (best, second) {
        (None, None) => false,
        (None, Some(_)) => true,
        (Some(b), Some(s)) => s - b >= SELECT_GAP_BITS,
        (Some(_), None) => unreachable!("sorted"),
    };
    if !separated {
        return Err(NumericsError::Ambiguous { best, runner_up: second });
    }
    Ok(Selection { index: order[0], scores })
}

/// Coefficients in `y` of `f` with `x = value` substituted.
fn specialize(f: &IntPoly, x: Var, y: Var, value: &ComplexBF) -> Vec<ComplexBF> {
    let prec = value.prec();
    f.coeffs_in(y)
        .iter()
        .map(|c| {
            let cx = c.coeffs_in(x);
            let mut acc = ComplexBF::zero(prec);
            for a in cx.iter().rev() {
                acc = &(&acc * value) + &a.constant_term().to_complex(prec);
            }
            acc
        })
        .collect()
}

fn eval_dense(c: &[ComplexBF], z: &ComplexBF) -> ComplexBF {
    let mut acc = ComplexBF::zero(z.prec());
    for a in c.iter().rev() {
        acc = &(&acc * z) + a;
    }
    acc
}

fn dense_derivative(c: &[ComplexBF]) -> Vec<ComplexBF> {
    c.iter().enumerate().skip(1).map(|(k, a)| a.mul_real(&BigFloat::from_i64(k as i64, a.prec()))).collect()
}

const NEWTON_STEPS: usize = 12;
const MAX_HALVINGS: u32 = 40;

/// Newton refinement of a root `y` of `f(x, ·)` at fixed `x`. Requires the
/// corrections to contract; `None` otherwise.
pub fn newton_refine(f: &IntPoly, x: Var, y: Var, xv: &ComplexBF, y0: &ComplexBF) -> Option<ComplexBF> {
    let prec = xv.prec().max(y0.prec());
    let c = specialize(f, x, y, &xv.with_prec(prec));
    let dc = dense_derivative(&c);
    let mut yv = y0.with_prec(prec);
    let mut last = f64::INFINITY;
    let tol = 8.0 - prec as f64;
    for _ in 0..NEWTON_STEPS {
        let d = eval_dense(&dc, &yv);
        if d.is_zero() {
            return None;
        }
        let step = &eval_dense(&c, &yv) / &d;
        let size = step.log2_abs() - yv.log2_abs().max(0.0);
        if size > last - 0.5 && size > tol {
            return None;
        }
        yv = &yv - &step;
        if size < tol {
            return Some(yv);
        }
        last = size;
    }
    None
}

/// Newton-polish a root of a univariate polynomial in `v`.
pub fn polish_root(p: &IntPoly, v: Var, z: &ComplexBF) -> Option<ComplexBF> {
    let other = if v == Var::M { Var::L } else { Var::M };
    newton_refine(p, other, v, &ComplexBF::zero(z.prec()), z)
}

/// Follow the root `y0` of `f(x0, ·)` along the segment from `x0` to `x1`,
/// with a tangent predictor, Newton corrector and step halving.
pub fn track_branch(
    f: &IntPoly,
    x: Var,
    y: Var,
    x0: &ComplexBF,
    y0: &ComplexBF,
    x1: &ComplexBF,
) -> Result<ComplexBF, NumericsError> {
    let prec = x0.prec().max(y0.prec()).max(x1.prec());
    let fx = f.derivative(x);
    let fy = f.derivative(y);
    let delta = x1 - x0;
    let mut t = BigFloat::zero(prec);
    let one = BigFloat::one(prec);
    let mut h = BigFloat::one(prec);
    let mut halvings = 0;
    let mut yv = y0.with_prec(prec);
    let diverged = |t: &BigFloat| NumericsError::BranchDivergence { at: format!("t = {}", t.to_sci_string(12)) };
    while t < one {
        if &t + &h > one {
            h = &one - &t;
        }
        let xa = x0 + &delta.mul_real(&t);
        let t2 = &t + &h;
        let xb = x0 + &delta.mul_real(&t2);
        let mut pt = Assignment::new();
        pt.insert(x, xa);
        pt.insert(y, yv.clone());
        let slope = {
            let a = fx.evaluate(&pt).map_err(|_| diverged(&t))?;
            let b = fy.evaluate(&pt).map_err(|_| diverged(&t))?;
            if b.is_zero() {
                return Err(diverged(&t));
            }
            -&(&a / &b)
        };
        let pred = &yv + &(&slope * &delta.mul_real(&h));
        match newton_refine(f, x, y, &xb, &pred) {
            Some(next) => {
                yv = next;
                t = t2;
                h = h.mul_pow2(1).min_with(&one);
            }
            None => {
                halvings += 1;
                if halvings > MAX_HALVINGS {
                    return Err(diverged(&t));
                }
                h = h.mul_pow2(-1);
            }
        }
    }
    Ok(yv)
}

trait MinWith {
    fn min_with(self, o: &Self) -> Self;
}

impl MinWith for BigFloat {
    fn min_with(self, o: &Self) -> Self {
        if &self > o {
            o.clone()
        } else {
            self
        }
    }
}

/// Rational approximation check used by tests: `|a - b| < 2^-bits`.
pub fn close_to(a: &ComplexBF, b: &ComplexBF, bits: f64) -> bool {
    (a - b).log2_abs() < -bits
}

/// Integer polynomial as complex coefficients in `v`, little-endian.
pub fn complex_coeffs(p: &IntPoly, v: Var, prec: u32) -> Vec<ComplexBF> {
    let z = ZPoly::from_multi(p, v).expect("univariate");
    z.coeffs().iter().map(|c: &BigInt| ComplexBF::from_int(c, prec)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var::{M, W, Y};

    fn up(c: &[i64]) -> IntPoly {
        IntPoly::univariate(M, &c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    #[test]
    fn quadratic_roots() {
        let set = complex_roots(&up(&[1, 0, 1]), 128).unwrap();
        assert_eq!(set.roots.len(), 2);
        let i = ComplexBF::i(128);
        assert!(set.roots.iter().any(|r| close_to(r, &i, 120.0)));
        assert!(set.roots.iter().any(|r| close_to(r, &-&i, 120.0)));
        assert!(set.max_residual_log2() < 16.0 - 128.0);
        let set = complex_roots(&up(&[1, -1, 1]), 256).unwrap();
        let s3 = BigFloat::from_i64(3, 256).sqrt().mul_pow2(-1);
        let m0 = ComplexBF::new(BigFloat::one(256).mul_pow2(-1), s3);
        assert!(set.roots.iter().any(|r| close_to(r, &m0, 250.0)));
    }

    #[test]
    fn volume_polynomial_root() {
        let f = IntPoly::univariate(
            crate::poly::Var::V,
            &[-1i64, 0, -864, 0, 64457856, 0, 412091172864, 0, 785065068490752]
                .iter()
                .map(|&x| BigInt::from(x))
                .collect::<Vec<_>>(),
        );
        let set = complex_roots(&f, 256).unwrap();
        let target = ComplexBF::from_f64(0.009909630999945638, 0.0, 256);
        assert!(set.roots.iter().any(|r| close_to(r, &target, 45.0)));
    }

    #[test]
    fn repeated_and_zero_roots() {
        // M^2 (M - 1)^3 (M + 2)
        let p = up(&[0, 0, -2, 5, -3, -1, 1]);
        let set = complex_roots(&p, 128).unwrap();
        assert_eq!(set.roots.len(), 3);
        assert!(set.roots.iter().any(ComplexBF::is_zero));
    }

    #[test]
    fn unit_circle_filter() {
        let r = unit_circle_roots(&up(&[1, -1, 1]), 128, 64).unwrap();
        assert_eq!(r.len(), 2);
        let a = arg_positive(&r[0]).to_f64();
        assert!((a - std::f64::consts::FRAC_PI_3).abs() < 1e-15);
        assert!(unit_circle_roots(&up(&[-2, 1]), 128, 64).unwrap().is_empty());
        // (M^4 - 1): arguments 0, π/2, π, 3π/2
        let r = unit_circle_roots(&up(&[-1, 0, 0, 0, 1]), 128, 64).unwrap();
        let args: Vec<f64> = r.iter().map(|z| arg_positive(z).to_f64()).collect();
        assert_eq!(args.len(), 4);
        assert!(args[0].abs() < 1e-30 && (args[3] - 1.5 * std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn select_factor_examples() {
        let prec = 128;
        let f1 = up(&[-1, 1]);
        let f2 = up(&[1, 1]);
        let mut pt = Assignment::new();
        let eps = BigFloat::parse_decimal("1e-30", prec).unwrap();
        pt.insert(M, ComplexBF::real(&BigFloat::one(prec) + &eps));
        let s = select_factor(&[f2.clone(), f1.clone()], &pt, 40).unwrap();
        assert_eq!(s.index, 1);
        let s = select_factor(&[f1.scale(&BigInt::from(7)), f2.clone()], &pt, 40).unwrap();
        assert_eq!(s.index, 0);
        assert_eq!(select_factor(std::slice::from_ref(&f2), &pt, 40).unwrap().index, 0);
        let mut far = Assignment::new();
        far.insert(M, ComplexBF::from_f64(0.3, 0.0, prec));
        assert!(matches!(select_factor(&[f1, f2], &far, 40), Err(NumericsError::NoVanishing { .. })));
    }

    #[test]
    fn ambiguous_selection() {
        let prec = 128;
        let mut pt = Assignment::new();
        pt.insert(M, ComplexBF::one(prec));
        let f = up(&[-1, 1]);
        let g = up(&[-1, 0, 1]);
        assert!(matches!(select_factor(&[f, g], &pt, 40), Err(NumericsError::Ambiguous { .. })));
    }

    #[test]
    fn tracks_a_branch() {
        // W^2 = M: follow sqrt from M = 1 to M = i
        let f = &IntPoly::var(W).pow(2) - &IntPoly::var(M);
        let prec = 192;
        let w = track_branch(&f, M, W, &ComplexBF::one(prec), &ComplexBF::one(prec), &ComplexBF::i(prec)).unwrap();
        let half = BigFloat::from_i64(2, prec).sqrt().mul_pow2(-1);
        assert!(close_to(&w, &ComplexBF::new(half.clone(), half), 180.0));
        // Y = M^3 near M = 2
        let g = &IntPoly::var(Y) - &IntPoly::var(M).pow(3);
        let y = track_branch(&g, M, Y, &ComplexBF::from_f64(2.0, 0.0, prec), &ComplexBF::from_f64(8.0, 0.0, prec), &ComplexBF::from_f64(2.5, 0.0, prec)).unwrap();
        assert!(close_to(&y, &ComplexBF::from_f64(15.625, 0.0, prec), 170.0));
    }
}
