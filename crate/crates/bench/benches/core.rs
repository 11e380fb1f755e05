use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use homdend_bench::{dendriform, dense_matrix};
use homdend_core::linalg::rref;
use homdend_core::random;
use homdend_core::{CohomologyEngine, Field};

fn bench_rref(c: &mut Criterion) {
    let mut group = c.benchmark_group("rref");
    for field in [Field::Rationals, Field::Prime(101)] {
        for n in [8, 16, 32] {
            let m = dense_matrix(field, n, 7);
            group.bench_with_input(BenchmarkId::new(field.to_string(), n), &m, |b, m| {
                b.iter(|| rref(black_box(m)))
            });
        }
    }
    group.finish();
}

fn bench_differential(c: &mut Criterion) {
    let owm = dendriform(Field::Rationals, 3, 11);
    let mut rng = random::seeded(3);
    let mut group = c.benchmark_group("differential");
    for n in 1..=3 {
        let f = random::cochain(&mut rng, owm.operad(), n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| {
            b.iter(|| owm.differential(black_box(f)).expect("same structure"))
        });
    }
    group.finish();
}

fn bench_cohomology(c: &mut Criterion) {
    let mut group = c.benchmark_group("cohomology-report");
    group.sample_size(10);
    for field in [Field::Rationals, Field::Prime(101)] {
        let owm = dendriform(field, 3, 5);
        group.bench_function(BenchmarkId::new(field.to_string(), "H1-H2"), |b| {
            b.iter(|| {
                let engine = CohomologyEngine::new(owm.clone());
                (
                    engine.report(1).expect("in cap"),
                    engine.report(2).expect("in cap"),
                )
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_rref, bench_differential, bench_cohomology);
criterion_main!(benches);
