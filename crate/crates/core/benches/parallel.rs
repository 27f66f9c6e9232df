//! Rayon-parallel sweeps against their sequential twins.
//!
//! Requires the `parallel` feature (on by default); with it enabled both
//! code paths live in one binary, so a single `cargo bench -p halfhex-core`
//! reports the speedup side by side.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use halfhex_core::ensemble::EnsembleSpec;
use halfhex_core::kernel::{kernel_grid, kernel_grid_seq, KernelContext};
use halfhex_core::verify::{
    inverse_identity_suite, inverse_identity_suite_seq, kernel_enumeration_suite,
    kernel_enumeration_suite_seq, SweepConfig,
};

fn bench_inverse_sweep(c: &mut Criterion) {
    let cfg = SweepConfig {
        n_max: 8,
        cases: 64,
        seed: 2024,
    };
    let mut group = c.benchmark_group("inverse_identity_sweep");
    group.sample_size(10);
    group.bench_function(BenchmarkId::new("parallel", cfg.cases), |b| {
        b.iter(|| {
            let outcome = inverse_identity_suite(&cfg);
            assert!(outcome.passed());
        })
    });
    group.bench_function(BenchmarkId::new("sequential", cfg.cases), |b| {
        b.iter(|| {
            let outcome = inverse_identity_suite_seq(&cfg);
            assert!(outcome.passed());
        })
    });
    group.finish();
}

fn bench_kernel_grid(c: &mut Criterion) {
    let ctx = KernelContext::new(EnsembleSpec::half_hexagon(5));
    let mut group = c.benchmark_group("kernel_grid_order_5");
    group.sample_size(10);
    group.bench_function("parallel", |b| b.iter(|| kernel_grid(&ctx, 0, 11)));
    group.bench_function("sequential", |b| b.iter(|| kernel_grid_seq(&ctx, 0, 11)));
    group.finish();
}

fn bench_sampling(c: &mut Criterion) {
    let spec = EnsembleSpec::half_hexagon(10);
    let mut group = c.benchmark_group("sample_batch_order_10");
    group.sample_size(10);
    group.bench_function("parallel", |b| b.iter(|| spec.sample_batch(7, 64)));
    group.bench_function("sequential", |b| b.iter(|| spec.sample_batch_seq(7, 64)));
    group.finish();
}

fn bench_enumeration_sweep(c: &mut Criterion) {
    let cfg = SweepConfig {
        n_max: 2,
        cases: 20,
        seed: 2024,
    };
    let mut group = c.benchmark_group("kernel_vs_enumeration");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| {
            let outcome = kernel_enumeration_suite(&cfg);
            assert!(outcome.passed());
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            let outcome = kernel_enumeration_suite_seq(&cfg);
            assert!(outcome.passed());
        })
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_inverse_sweep,
    bench_kernel_grid,
    bench_sampling,
    bench_enumeration_sweep
);
criterion_main!(benches);
