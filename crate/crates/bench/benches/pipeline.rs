use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use plabic_bench::quiver_corpus;
use plabic_core::cuts::enumerate_cuts;
use plabic_core::jacobian::{jacobian_by_paths, jacobian_by_stable_hom, self_injectivity};
use plabic_core::samples::symmetric_3_9;
use plabic_core::search::{all_maximal_collections, enumerate_symmetric, SearchConfig};
use plabic_core::Quiver;

fn algebra(c: &mut Criterion) {
    let mut g = c.benchmark_group("jacobian_by_paths");
    for (name, q) in quiver_corpus() {
        g.bench_function(name, |b| b.iter(|| self_injectivity(&jacobian_by_paths(black_box(&q)).unwrap()).unwrap()));
    }
    g.finish();
    let fig = symmetric_3_9();
    c.bench_function("jacobian_by_stable_hom/fig-3-9", |b| b.iter(|| jacobian_by_stable_hom(black_box(&fig))));
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    for (k, n) in [(3, 9), (4, 8), (3, 12)] {
        g.bench_function(format!("symmetric-{k}-{n}"), |b| {
            b.iter(|| enumerate_symmetric(&SearchConfig::new(k, n)).unwrap())
        });
    }
    g.bench_function("maximal-3-6", |b| b.iter(|| all_maximal_collections(3, 6).unwrap()));
    g.finish();
}

fn cuts(c: &mut Criterion) {
    let q = Quiver::from_collection(&symmetric_3_9()).unwrap().underline();
    c.bench_function("enumerate_cuts/fig-3-9", |b| b.iter(|| enumerate_cuts(black_box(&q), usize::MAX)));
}

criterion_group!(benches, algebra, search, cuts);
criterion_main!(benches);
