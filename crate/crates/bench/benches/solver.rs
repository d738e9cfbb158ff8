use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use unitdist::catalog;
use unitdist::plane::HexScheme;
use unitdist::{chromatic_number, degeneracy, greedy_degeneracy_coloring};

fn coloring(c: &mut Criterion) {
    let moser = catalog::moser_spindle();
    let golomb = catalog::golomb_graph();
    let patch = catalog::triangular_patch(3);
    c.bench_function("chromatic moser", |b| b.iter(|| chromatic_number(black_box(&moser))));
    c.bench_function("chromatic golomb", |b| b.iter(|| chromatic_number(black_box(&golomb))));
    c.bench_function("chromatic patch3", |b| b.iter(|| chromatic_number(black_box(&patch))));
    c.bench_function("greedy patch3", |b| {
        b.iter(|| greedy_degeneracy_coloring(black_box(&patch)))
    });
    c.bench_function("degeneracy patch3", |b| b.iter(|| degeneracy(black_box(&patch))));
}

fn construction(c: &mut Criterion) {
    c.bench_function("build moser", |b| b.iter(catalog::moser_spindle));
    c.bench_function("build c3_mink2", |b| b.iter(catalog::c3_mink2));
    c.bench_function("build patch3", |b| b.iter(|| catalog::triangular_patch(black_box(3))));
}

fn hex_sampling(c: &mut Criterion) {
    let scheme = HexScheme::canonical();
    c.bench_function("hex verify 64k", |b| b.iter(|| scheme.verify(black_box(1 << 16), 0)));
}

criterion_group!(benches, coloring, construction, hex_sampling);
criterion_main!(benches);
