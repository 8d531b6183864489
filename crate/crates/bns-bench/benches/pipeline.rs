use criterion::{criterion_group, criterion_main, Criterion};

use bns_bench::{K14, K9, TREFOIL};
use bns_core::algebra::{Fp, Zz};
use bns_core::{bncomplex, invariants, PlanarDiagram};

fn bench_builds(c: &mut Criterion) {
    let trefoil = PlanarDiagram::parse(TREFOIL).unwrap();
    let k9 = PlanarDiagram::parse(K9).unwrap();
    c.bench_function("build_reduced_z_trefoil", |b| {
        b.iter(|| bncomplex::build(&trefoil, Zz, true, true).unwrap())
    });
    c.bench_function("build_reduced_z_9cr", |b| {
        b.iter(|| bncomplex::build(&k9, Zz, true, true).unwrap())
    });
    c.bench_function("build_reduced_f2_9cr", |b| {
        b.iter(|| bncomplex::build(&k9, Fp::new(2), true, true).unwrap())
    });
}

fn bench_invariants(c: &mut Criterion) {
    let k9 = PlanarDiagram::parse(K9).unwrap();
    c.bench_function("s_integral_9cr", |b| {
        b.iter(|| invariants::s_integral(&k9).unwrap())
    });
    c.bench_function("full_report_9cr", |b| {
        b.iter(|| invariants::full_report(&k9, &[2, 3]).unwrap())
    });
    c.bench_function("khovanov_table_9cr", |b| {
        b.iter(|| invariants::khovanov_table(&k9, true).unwrap())
    });
}

fn bench_14_crossings(c: &mut Criterion) {
    let k14 = PlanarDiagram::parse(K14).unwrap();
    let mut g = c.benchmark_group("large");
    g.sample_size(10);
    g.bench_function("s_integral_14cr", |b| {
        b.iter(|| invariants::s_integral(&k14).unwrap())
    });
    g.finish();
}

criterion_group!(benches, bench_builds, bench_invariants, bench_14_crossings);
criterion_main!(benches);
