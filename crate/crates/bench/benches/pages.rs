use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wfilt_core::cubical::page_simple_cohomology;
use wfilt_core::descent::singularity_ss;
use wfilt_core::generate::{random_filtered, random_square, Shape};
use wfilt_core::io::{Document, Input};
use wfilt_core::linalg::smith_normal_form;
use wfilt_core::spectral::stabilize;
use wfilt_core::{catalog, Matrix, Ring};

fn snf(c: &mut Criterion) {
    let mut g = c.benchmark_group("smith_normal_form");
    for n in [8usize, 16, 24] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let m = Matrix::from_i64(Ring::Integers, &rows);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| smith_normal_form(black_box(m))));
    }
    g.finish();
}

fn pages(c: &mut Criterion) {
    let mut g = c.benchmark_group("stabilize");
    for dim in [2usize, 4, 6] {
        let mut rng = ChaCha8Rng::seed_from_u64(dim as u64);
        let shape = Shape { max_dim: dim, ..Shape::default() };
        for ring in [Ring::Rationals, Ring::Integers] {
            let fk = random_filtered(&mut rng, ring, shape);
            g.bench_with_input(BenchmarkId::new(ring.to_string(), dim), &fk, |b, fk| {
                b.iter(|| stabilize(black_box(fk), 1))
            });
        }
    }
    g.finish();
}

fn squares(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let d = random_square(&mut rng, Ring::Rationals, Shape { max_dim: 2, ..Shape::default() });
    c.bench_function("page_simple_cohomology r=1", |b| b.iter(|| page_simple_cohomology(black_box(&d), 1)));
}

fn resolutions(c: &mut Criterion) {
    let doc: Document = catalog::nodal_punctured_torus(Ring::Integers);
    let Input::Resolution(r) = doc.build().unwrap().input else { unreachable!() };
    c.bench_function("singularity nodal torus over Z", |b| b.iter(|| singularity_ss(black_box(&r))));
}

criterion_group!(benches, snf, pages, squares, resolutions);
criterion_main!(benches);
