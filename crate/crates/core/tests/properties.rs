mod common;

use common::{poly, runner, SEED};
use conevol::float::ComplexBF;
use conevol::io::parse_poly_expr;
use conevol::numerics::select_factor;
use conevol::poly::{Assignment, IntPoly, Var, VarSet};
use proptest::prelude::*;

use Var::{L, M, W};

#[test]
fn grammar_roundtrip() {
    let vars = VarSet::of(&[M, L, W]);
    runner(1000, SEED)
        .run(&poly(&[M, L, W], 7, 10, 1_000_000), |p| {
            let text = p.to_string();
            let back = parse_poly_expr(&text, vars).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
            prop_assert_eq!(back, p);
            Ok(())
        })
        .unwrap();
}

#[test]
fn selection_follows_permutations() {
    let s = (prop::collection::btree_set((-40i64..40).prop_filter("nonzero", |r| *r != 0), 2..8), any::<prop::sample::Index>(), any::<u64>());
    runner(500, SEED)
        .run(&s, |(roots, pick, shuffle_seed)| {
            let roots: Vec<i64> = roots.into_iter().collect();
            let target = roots[pick.index(roots.len())];
            let mut factors: Vec<IntPoly> =
                roots.iter().map(|&r| &IntPoly::var(M) - &IntPoly::from_i64(r)).collect();
            let pt = Assignment::from([(M, ComplexBF::from_f64(target as f64 + 1e-30, 0.0, 128))]);
            let first = select_factor(&factors, &pt, 40).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let chosen = factors[first.index].clone();
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(shuffle_seed);
            rand::seq::SliceRandom::shuffle(factors.as_mut_slice(), &mut rng);
            let second = select_factor(&factors, &pt, 40).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(&factors[second.index], &chosen);
            prop_assert_eq!(chosen, &IntPoly::var(M) - &IntPoly::from_i64(target));
            Ok(())
        })
        .unwrap();
}
