use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use kalg::exact::{rat, Gq, Matrix};
use kalg::ideals::ideal_closure_window;
use kalg::lie::{m_basis_k, Window};
use kalg::verma::{gram_k_form, kac_determinant, Weight};
use num_traits::Zero;

fn hilbert_like(n: usize) -> Matrix {
    Matrix::from_fn(n, n, |i, j| {
        Gq::new(rat(1, (i + j + 1) as i64), rat((i as i64) - (j as i64), 7))
    })
}

fn linear_algebra(c: &mut Criterion) {
    let m = hilbert_like(12);
    c.bench_function("det 12x12 gaussian rationals", |b| {
        b.iter(|| black_box(&m).det().unwrap())
    });
    c.bench_function("rref 12x12 gaussian rationals", |b| {
        b.iter(|| black_box(&m).rref())
    });
}

fn modules(c: &mut Criterion) {
    let h = Gq::from_ratio(1, 3);
    let cc = Gq::from_ratio(7, 10);
    c.bench_function("Shapovalov determinant level 5", |b| {
        b.iter(|| kac_determinant(black_box(&h), black_box(&cc), 5).unwrap())
    });
    let w = Weight::new(rat(1, 2), rat(1, 3), Gq::from_int(2), Gq::zero());
    c.bench_function("contravariant Gram matrix degree 3", |b| {
        b.iter(|| gram_k_form(black_box(&w), 3).unwrap())
    });
}

fn ideals(c: &mut Criterion) {
    let win = Window::new(8).unwrap();
    let g = [m_basis_k(1, 0) + m_basis_k(2, 0)];
    c.bench_function("ideal closure window 8", |b| {
        b.iter(|| ideal_closure_window(black_box(&g), win).unwrap())
    });
}

criterion_group!(benches, linear_algebra, modules, ideals);
criterion_main!(benches);
