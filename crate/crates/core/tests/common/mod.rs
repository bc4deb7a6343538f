//! Strategies and property checks shared by the integration tests.
#![allow(dead_code)]

use conevol::factor::factor;
use conevol::numerics::complex_roots;
use conevol::pipeline::implicit_derivative_poly;
use conevol::poly::{IntPoly, Monomial, Var, VarSet, NVARS};
use conevol::resultant::{bareiss, resultant, subresultant_prs};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestError, TestRunner};

use Var::{M, W, Y, Z};

pub const CASES: u32 = 500;
pub const SEED: u64 = 0x5eed_c0de;

pub fn runner(cases: u32, seed: u64) -> TestRunner {
    TestRunner::new(Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    })
}

/// Random polynomial in `vars`, each exponent at most `max_deg`, with up to
/// `max_terms` terms and coefficients in `[-coef, coef]`.
pub fn poly(vars: &'static [Var], max_deg: u32, max_terms: usize, coef: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, vars.len()), -coef..=coef), 1..=max_terms).prop_map(
        move |terms| {
            let terms = terms.into_iter().map(|(es, c)| {
                let mut e = [0u32; NVARS];
                for (v, k) in vars.iter().zip(es) {
                    e[v.index()] = k;
                }
                (Monomial::from_exps(e), c.into())
            });
            IntPoly::from_terms(terms).with_vars(VarSet::of(vars))
        },
    )
}

/// Like [`poly`] but of positive degree in `v`.
pub fn poly_in(v: Var, vars: &'static [Var], max_deg: u32, max_terms: usize, coef: i64) -> impl Strategy<Value = IntPoly> {
    poly(vars, max_deg, max_terms, coef).prop_map(move |p| if p.degree(v) == 0 { &p + &IntPoly::var(v) } else { p })
}

type Outcome = Result<(), TestError<String>>;

fn report<T: std::fmt::Debug>(r: Result<(), TestError<T>>) -> Outcome {
    r.map_err(|e| match e {
        TestError::Abort(why) => TestError::Abort(why),
        TestError::Fail(why, v) => TestError::Fail(why, format!("{v:?}")),
    })
}

pub fn resultant_swap_symmetry(cases: u32, seed: u64) -> Outcome {
    let s = (poly_in(W, &[M, W], 3, 6, 20), poly_in(W, &[M, W], 3, 6, 20));
    report(runner(cases, seed).run(&s, |(f, g)| {
        let rfg = resultant(&f, &g, W).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let rgf = resultant(&g, &f, W).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let sign = (f.degree(W) * g.degree(W)) % 2 == 1;
        prop_assert_eq!(if sign { -rfg } else { rfg }, rgf);
        Ok(())
    }))
}

pub fn resultant_multiplicativity(cases: u32, seed: u64) -> Outcome {
    let s = (poly_in(W, &[M, W], 2, 5, 9), poly_in(W, &[M, W], 2, 5, 9), poly_in(W, &[M, W], 2, 5, 9));
    report(runner(cases, seed).run(&s, |(f, g, h)| {
        let fail = |e: conevol::resultant::ResultantError| TestCaseError::fail(e.to_string());
        let lhs = resultant(&(&f * &g), &h, W).map_err(fail)?;
        let rhs = &resultant(&f, &h, W).map_err(fail)? * &resultant(&g, &h, W).map_err(fail)?;
        prop_assert_eq!(lhs, rhs);
        Ok(())
    }))
}

pub fn bareiss_equals_prs(cases: u32, seed: u64) -> Outcome {
    let s = (poly_in(Y, &[M, Y, Z], 3, 7, 30), poly_in(Y, &[M, Y, Z], 3, 7, 30));
    report(runner(cases, seed).run(&s, |(f, g)| {
        prop_assert_eq!(bareiss(&f, &g, Y), subresultant_prs(&f, &g, Y));
        Ok(())
    }))
}

fn sorted_factors(p: &IntPoly) -> Result<(num_bigint::BigInt, Vec<(String, u32)>), TestCaseError> {
    let f = factor(p, SEED).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let mut fs: Vec<(String, u32)> = f.factors.iter().map(|(q, m)| (q.to_string(), *m)).collect();
    fs.sort();
    Ok((f.unit, fs))
}

fn merge(mut a: Vec<(String, u32)>, b: Vec<(String, u32)>) -> Vec<(String, u32)> {
    for (q, m) in b {
        match a.iter_mut().find(|(p, _)| *p == q) {
            Some(e) => e.1 += m,
            None => a.push((q, m)),
        }
    }
    a.sort();
    a
}

/// Factoring a product recovers the union of the factorizations of its
/// pieces, and expands back to the product.
pub fn factor_roundtrip(cases: u32, seed: u64) -> Outcome {
    let piece = poly_in(M, &[M, W], 2, 4, 6);
    let s = prop::collection::vec(piece, 1..=3);
    report(runner(cases, seed).run(&s, |pieces| {
        let product = pieces.iter().skip(1).fold(pieces[0].clone(), |acc, p| &acc * p);
        let fac = factor(&product, SEED).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(fac.expand(), product.clone());
        let (mut unit, mut want) = (num_bigint::BigInt::from(1), Vec::new());
        for p in &pieces {
            let (u, fs) = sorted_factors(p)?;
            unit *= u;
            want = merge(want, fs);
        }
        let (got_unit, got) = sorted_factors(&product)?;
        prop_assert_eq!(got, want);
        prop_assert_eq!(got_unit, unit);
        Ok(())
    }))
}

/// Every returned root has relative residual below `2^-48` at 128 bits.
pub fn root_residuals(cases: u32, seed: u64) -> Outcome {
    let s = prop::collection::vec(-1000i64..=1000, 2..=25).prop_filter("nonzero leading", |c| *c.last().unwrap() != 0);
    report(runner(cases, seed).run(&s, |c| {
        let coeffs: Vec<num_bigint::BigInt> = c.iter().map(|&x| x.into()).collect();
        let p = IntPoly::univariate(M, &coeffs);
        let rs = complex_roots(&p, 128).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(!rs.roots.is_empty() && rs.roots.len() < c.len());
        prop_assert!(rs.max_residual_log2() < -48.0, "residual 2^{}", rs.max_residual_log2());
        Ok(())
    }))
}

/// `Q` equals the coefficient of `V` in `P(M + V, Y + Z V)`.
pub fn q_identity(cases: u32, seed: u64) -> Outcome {
    let s = poly(&[M, Y], 6, 12, 50);
    report(runner(cases, seed).run(&s, |p| {
        let v = IntPoly::var(Var::V);
        let shifted = p.compose(M, &(&IntPoly::var(M) + &v));
        let shifted = shifted.compose(Y, &(&IntPoly::var(Y) + &(&IntPoly::var(Z) * &v)));
        let first_order = shifted.coeff_in(Var::V, 1);
        let q = implicit_derivative_poly(&p);
        prop_assert!(q.iter().eq(first_order.iter()), "Q = {} but first-order term is {}", q, first_order);
        Ok(())
    }))
}
