use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use cqca::finite_chain::{ring_state_entropy, Region};
use cqca::stabilizer::evolve;
use cqca::{LaurentPoly, PhaseVector, SpaceTimeDiagram, TIStabilizerState, ValidatedCqca};

/// Dense pseudo-random polynomial on `0..len` from a fixed LCG.
fn dense(len: i64, mut state: u64) -> LaurentPoly {
    let exps: Vec<i64> = (0..len)
        .filter(|_| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            state >> 63 == 1
        })
        .collect();
    LaurentPoly::from_exponents(exps)
}

fn poly_mul(c: &mut Criterion) {
    let mut group = c.benchmark_group("poly_mul");
    for len in [64, 512, 4096] {
        let (a, b) = (dense(len, 1), dense(len, 2));
        group.bench_with_input(BenchmarkId::from_parameter(len), &len, |bench, _| {
            bench.iter(|| black_box(&a) * black_box(&b))
        });
    }
    group.finish();
}

fn poly_gcd(c: &mut Criterion) {
    let mut group = c.benchmark_group("poly_gcd");
    for len in [64, 512] {
        let common = dense(len / 2, 3);
        let a = &dense(len, 4) * &common;
        let b = &dense(len, 5) * &common;
        group.bench_with_input(BenchmarkId::from_parameter(len), &len, |bench, _| {
            bench.iter(|| black_box(&a).gcd(black_box(&b)).unwrap())
        });
    }
    group.finish();
}

fn automaton(c: &mut Criterion) {
    let g = ValidatedCqca::glider();
    let f = ValidatedCqca::fractal();
    c.bench_function("glider_pow_1024", |b| b.iter(|| black_box(&g).pow(1024)));
    let v: PhaseVector = "Z@0".parse().unwrap();
    c.bench_function("fractal_apply_256_steps", |b| {
        b.iter(|| (0..256).fold(v.clone(), |acc, _| f.apply(&acc)))
    });
    c.bench_function("fractal_state_evolve_256", |b| {
        b.iter(|| evolve(&TIStabilizerState::all_up(), black_box(&f), 256))
    });
    c.bench_function("fractal_diagram_128", |b| {
        b.iter(|| SpaceTimeDiagram::build(&f, &v, 128).to_ppm())
    });
}

fn ring_entropy(c: &mut Criterion) {
    let mut group = c.benchmark_group("ring_state_entropy");
    let g = ValidatedCqca::glider();
    let state = evolve(&TIStabilizerState::all_up(), &g, 10).pop().unwrap();
    for sites in [64, 256] {
        group.bench_with_input(BenchmarkId::from_parameter(sites), &sites, |bench, &n| {
            bench.iter(|| ring_state_entropy(&state, n, Region::new(0, n / 2)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, poly_mul, poly_gcd, automaton, ring_entropy);
criterion_main!(benches);
