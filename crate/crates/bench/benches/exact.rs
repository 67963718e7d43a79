use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ut4k::classify::cubic_integer_points;
use ut4k::exact::rat;
use ut4k::intlat::smith_normal_form;
use ut4k::ktheory::{exterior_action, ut4_alpha, ut4_k_groups};
use ut4k::{enumerate_equivalents, IntMatrix, NumberField, Poly};

fn cubic() -> NumberField {
    NumberField::make(Poly::from_i64(&[-1, -1, 0, 1]), rat(1), rat(2)).unwrap()
}

fn smith(c: &mut Criterion) {
    let even = exterior_action(&ut4_alpha(), 4).unwrap().even_matrix.id_minus().unwrap();
    c.bench_function("snf_ut4_even_block", |b| b.iter(|| smith_normal_form(black_box(&even))));
    let dense = IntMatrix::from_i64(&[
        &[12, -7, 3, 9, 4, -2],
        &[5, 8, -11, 0, 6, 1],
        &[-3, 2, 7, 13, -8, 5],
        &[9, 0, -4, 6, 11, -7],
        &[1, -9, 2, -5, 3, 10],
        &[7, 4, 6, -1, -12, 8],
    ]);
    c.bench_function("snf_dense_6x6", |b| b.iter(|| smith_normal_form(black_box(&dense))));
}

fn k_groups(c: &mut Criterion) {
    c.bench_function("ut4_k_groups", |b| b.iter(ut4_k_groups));
}

fn cubic_search(c: &mut Criterion) {
    let f = cubic();
    // x^3 - x - 1: p = 0, q = -1, r = -1
    let mut g = c.benchmark_group("cubic_search");
    g.sample_size(10);
    for bound in [1_000u64, 10_000] {
        g.bench_function(format!("integer_points_{bound}"), |b| {
            b.iter(|| cubic_integer_points(&rat(0), &rat(-1), &rat(-1), black_box(bound)))
        });
    }
    g.bench_function("equivalents_1000", |b| b.iter(|| enumerate_equivalents(&f, black_box(1000)).unwrap()));
    g.finish();
}

fn sign(c: &mut Criterion) {
    let f = cubic();
    let close = f.elt_i64(&[-2_369, 1_174, -1_785]);
    c.bench_function("sign_cubic", |b| b.iter(|| black_box(&close).sign()));
}

criterion_group!(benches, smith, k_groups, cubic_search, sign);
criterion_main!(benches);
