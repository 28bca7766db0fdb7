use criterion::{black_box, criterion_group, criterion_main, Criterion};
use polybernoulli::{
    double_index_formula, genfunc_closed, li_sha_series, triple_index_formula_a,
    triple_index_formula_b, StirlingTable, WeightTuple,
};

fn bench_stirling_growth(c: &mut Criterion) {
    c.bench_function("stirling_table_grow_200", |b| {
        b.iter(|| {
            let mut table = StirlingTable::new();
            table.grow_to(black_box(200));
            table.get(200, 100).clone()
        })
    });
}

fn bench_formulas(c: &mut Criterion) {
    c.bench_function("double_index_m44_kneg2", |b| {
        b.iter(|| double_index_formula(black_box(4), black_box(4), -2, -2))
    });
    c.bench_function("triple_index_a_m222_kneg1", |b| {
        b.iter(|| triple_index_formula_a(black_box(2), 2, 2, -1, -1, -1))
    });
    c.bench_function("triple_index_b_m222_kneg1", |b| {
        b.iter(|| triple_index_formula_b(black_box(2), 2, 2, -1, -1, -1))
    });
}

fn bench_series(c: &mut Criterion) {
    c.bench_function("genfunc_closed_r2_deg6", |b| {
        b.iter(|| genfunc_closed(black_box(2), black_box(6)))
    });
    // product caches warm up on the first iteration; the steady state is
    // the per-weight assembly and exact division
    c.bench_function("li_sha_series_r3_deg4", |b| {
        let k = WeightTuple::new(vec![-2, 1, -1]);
        b.iter(|| li_sha_series(black_box(&k), black_box(4)))
    });
}

criterion_group!(benches, bench_stirling_growth, bench_formulas, bench_series);
criterion_main!(benches);
