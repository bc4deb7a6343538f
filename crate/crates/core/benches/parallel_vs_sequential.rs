//! Root finding and the 5_2 pipeline on a one-thread pool against the full
//! rayon pool. Without the `parallel` feature only the sequential build runs.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;

use conevol::io::census::census_lookup;
use conevol::numerics::complex_roots;
use conevol::pipeline::run_pipeline;
use conevol::poly::{IntPoly, Var};
use conevol::selftest::entry_config;

/// Degree-60 polynomial with small pseudo-random coefficients.
fn test_poly() -> IntPoly {
    let mut x: i64 = 12345;
    let coeffs: Vec<BigInt> = (0..=60)
        .map(|_| {
            x = (x * 1103515245 + 12345) % 2147483648;
            BigInt::from(x % 201 - 100)
        })
        .collect();
    IntPoly::univariate(Var::M, &coeffs)
}

fn pipeline_5_2() {
    let e = census_lookup("5_2").unwrap();
    let r = run_pipeline(&e.a_poly, Some(&e.witness(256)), &entry_config(&e, 0, 256)).unwrap();
    black_box(r.f_poly);
}

#[cfg(feature = "parallel")]
fn bench(c: &mut Criterion) {
    let p = test_poly();
    let pools = [
        ("sequential", rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        ("parallel", rayon::ThreadPoolBuilder::new().build().unwrap()),
    ];
    let mut g = c.benchmark_group("roots_deg60_256bit");
    for (name, pool) in &pools {
        g.bench_function(*name, |b| b.iter(|| pool.install(|| complex_roots(black_box(&p), 256).unwrap())));
    }
    g.finish();
    let mut g = c.benchmark_group("pipeline_5_2");
    g.sample_size(10);
    for (name, pool) in &pools {
        g.bench_function(*name, |b| b.iter(|| pool.install(pipeline_5_2)));
    }
    g.finish();
}

#[cfg(not(feature = "parallel"))]
fn bench(c: &mut Criterion) {
    let p = test_poly();
    c.bench_function("roots_deg60_256bit/sequential", |b| b.iter(|| complex_roots(black_box(&p), 256).unwrap()));
    let mut g = c.benchmark_group("pipeline_5_2");
    g.sample_size(10);
    g.bench_function("sequential", |b| b.iter(pipeline_5_2));
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
