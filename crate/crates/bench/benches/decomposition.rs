use std::hint::black_box;

use criterion::{Criterion, criterion_group, criterion_main};

use msdecomp_bench::{fixture, large_value_instance};
use msdecomp_core::{
    InstanceSpec, SearchConfig, decompose, generate_nth, iterated_search, quotient,
};

fn bench_multiset_algebra(c: &mut Criterion) {
    let a = fixture(&[100], 10_000, 1).factors.remove(0);
    let b = fixture(&[100], 10_000, 2).factors.remove(0);
    c.bench_function("minkowski_sum/100x100", |bench| {
        bench.iter(|| black_box(&a).minkowski_sum(black_box(&b)).unwrap())
    });

    let g = fixture(&[2; 12], 10_000, 7);
    let factor = g.factors[0].clone();
    c.bench_function("quotient/full_placement_4096", |bench| {
        bench.iter(|| quotient(black_box(&g.instance), black_box(&factor)).unwrap())
    });
}

fn bench_search(c: &mut Criterion) {
    let g = fixture(&[5, 5], 10_000, 11);
    c.bench_function("iterated_search/5x5_range_10000", |bench| {
        bench.iter(|| {
            iterated_search(black_box(&g.instance), 5, &SearchConfig::with_seed(3)).unwrap()
        })
    });

    let g = fixture(&[2; 10], 10_000, 11);
    c.bench_function("iterated_search/2^10_range_10000", |bench| {
        bench.iter(|| {
            iterated_search(black_box(&g.instance), 2, &SearchConfig::with_seed(3)).unwrap()
        })
    });

    let m25 = large_value_instance();
    c.bench_function("decompose/25_large_values", |bench| {
        bench.iter(|| decompose(black_box(&m25), &SearchConfig::with_seed(3)))
    });
}

fn bench_generation(c: &mut Criterion) {
    let spec = InstanceSpec::new(vec![2; 12], 10_000, 5).unwrap();
    c.bench_function("generate/2^12", |bench| {
        bench.iter(|| generate_nth(black_box(&spec), 0).unwrap())
    });
}

criterion_group!(
    benches,
    bench_multiset_algebra,
    bench_search,
    bench_generation
);
criterion_main!(benches);
