use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use oodn_core::sample::ClassSampler;
use oodn_core::{batch, intersection, union, AnyClass, Strategy};

fn inputs(n: usize, seed: u64) -> Vec<AnyClass> {
    let mut s = ClassSampler::new(seed);
    (0..n).map(|i| s.homogeneous(&format!("C{i}")).into()).collect()
}

/// Naive against keyed union as the number of input classes grows. The naive
/// scan goes parallel once a run reaches a few thousand tuples.
fn strategies(c: &mut Criterion) {
    let mut group = c.benchmark_group("union");
    for n in [2, 3, 4, 5] {
        let classes = inputs(n, 7);
        for strategy in [Strategy::Naive, Strategy::Keyed] {
            group.bench_with_input(BenchmarkId::new(strategy.as_str(), n), &classes, |b, classes| {
                b.iter(|| union(black_box(classes), strategy, "U"))
            });
        }
    }
    group.finish();
}

/// Many independent exploiter calls: rayon map against the sequential one.
fn batches(c: &mut Criterion) {
    let mut s = ClassSampler::new(11);
    let work: Vec<Vec<AnyClass>> = (0..512).map(|_| s.mixed_batch(2, 4, 0.3)).collect();
    let job = |inputs: &Vec<AnyClass>| {
        let u = union(inputs, Strategy::Naive, "U").is_ok();
        let i = intersection(inputs, Strategy::Naive, "I").is_ok();
        u as u8 + i as u8
    };
    let mut group = c.benchmark_group("batch");
    group.bench_function("parallel", |b| b.iter(|| batch::map(black_box(&work), job)));
    group.bench_function("sequential", |b| b.iter(|| batch::map_sequential(black_box(&work), job)));
    group.finish();
}

criterion_group!(benches, strategies, batches);
criterion_main!(benches);
