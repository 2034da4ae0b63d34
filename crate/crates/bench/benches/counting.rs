use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fbclab_core::bounds::{
    emit_table2, emit_table3, min_n_exact, CodeParams, TABLE3_DEFAULT_COLUMNS,
};
use fbclab_core::counting::{theta, theta_direct, theta_egf};

fn theta_methods(c: &mut Criterion) {
    let mut g = c.benchmark_group("theta_n12_t4_r3");
    g.bench_function("direct", |b| b.iter(|| theta_direct(black_box(12), 4, 3)));
    g.bench_function("rec", |b| b.iter(|| theta(black_box(12), 4, 3)));
    g.bench_function("egf", |b| b.iter(|| theta_egf(black_box(12), 4, 3)));
    g.finish();
}

fn tables(c: &mut Criterion) {
    c.bench_function("min_n_exact_k6_t64_r2", |b| {
        let p = CodeParams::new(6, 64, 2).unwrap();
        b.iter(|| min_n_exact(black_box(p)))
    });
    c.bench_function("table2_k7", |b| {
        b.iter(|| emit_table2(black_box(7)).unwrap())
    });
    c.bench_function("table3_k5_15", |b| {
        b.iter(|| emit_table3(black_box(5..=15), &TABLE3_DEFAULT_COLUMNS).unwrap())
    });
}

criterion_group!(benches, theta_methods, tables);
criterion_main!(benches);
