//! Exhaustive sweeps on the rayon pool versus the current thread.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use srkit::constructions::construct_msrd111_ext;
use srkit::distributions::support_distribution;
use srkit::{Exec, Field, Limits, LinearCode, Profile};

fn modes() -> [(&'static str, Limits); 2] {
    [
        ("parallel", Limits::default().with_exec(Exec::Parallel)),
        ("sequential", Limits::default().with_exec(Exec::Sequential)),
    ]
}

fn weights(c: &mut Criterion) {
    let f = Field::prime(2).unwrap();
    let p = Profile::parse(&f, "3x4,2x3,1x3").unwrap();
    let code = LinearCode::random(&p, 16, &mut ChaCha8Rng::seed_from_u64(7));
    let mut g = c.benchmark_group("weight_distribution");
    g.sample_size(10);
    for (name, lim) in modes() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &lim, |b, lim| {
            b.iter(|| black_box(code.weight_distribution(lim).unwrap()))
        });
    }
    g.finish();
}

fn msrd(c: &mut Criterion) {
    let code = construct_msrd111_ext(&Field::prime(3).unwrap(), 3, 5).unwrap();
    let mut g = c.benchmark_group("msrd_check");
    g.sample_size(10);
    for (name, lim) in modes() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &lim, |b, lim| {
            b.iter(|| black_box(code.msrd_check(lim).unwrap()))
        });
    }
    g.finish();
}

fn supports(c: &mut Criterion) {
    let f = Field::prime(2).unwrap();
    let p = Profile::parse(&f, "2x3,2x2,1x2").unwrap();
    let code = LinearCode::random(&p, 10, &mut ChaCha8Rng::seed_from_u64(11));
    let mut g = c.benchmark_group("support_distribution");
    g.sample_size(10);
    for (name, lim) in modes() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &lim, |b, lim| {
            b.iter(|| black_box(support_distribution(&code, lim).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, weights, msrd, supports);
criterion_main!(benches);
