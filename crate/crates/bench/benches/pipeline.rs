use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fanpart_core::arrangement::{z8_fixture, intersection_poset, main_arrangement};
use fanpart_core::exactlin::{smith_normal_form, ExactMatrix};
use fanpart_core::homology::TopHomology;
use fanpart_core::obstruction::obstruction_class;

fn snf(c: &mut Criterion) {
    let xs: Vec<i64> = (0..64).map(|i| (i * 37 % 19) - 9).collect();
    let m = ExactMatrix::from_ints(8, 8, &xs);
    c.bench_function("snf 8x8", |b| b.iter(|| smith_normal_form(black_box(&m)).unwrap()));
}

fn poset(c: &mut Criterion) {
    let arr = main_arrangement(1, 2).unwrap();
    c.bench_function("poset (1,2)", |b| b.iter(|| intersection_poset(black_box(&arr))));
}

fn homology(c: &mut Criterion) {
    let arr = z8_fixture();
    let p = intersection_poset(&arr);
    c.bench_function("top homology z8", |b| b.iter(|| TopHomology::compute(black_box(&arr), &p).unwrap()));
    let arr = main_arrangement(1, 2).unwrap();
    let p = intersection_poset(&arr);
    c.bench_function("top homology (1,2)", |b| b.iter(|| TopHomology::compute(black_box(&arr), &p).unwrap()));
}

fn obstruction(c: &mut Criterion) {
    let mut g = c.benchmark_group("obstruction");
    g.sample_size(10);
    g.bench_function("(1,2)", |b| b.iter(|| obstruction_class(black_box(1), 2).unwrap()));
    g.finish();
}

criterion_group!(benches, snf, poset, homology, obstruction);
criterion_main!(benches);
