use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use isotropy_bench::coupled_r5;
use isotropy_core::canonical::normalize_frame;
use isotropy_core::random;
use isotropy_core::structures::{check_integrability, graph_theta};
use isotropy_core::transport::{pullback_subspace, LinearMap};
use isotropy_core::{Chart, VectorField};
use std::hint::black_box;

fn rref(c: &mut Criterion) {
    let mut g = c.benchmark_group("rref");
    for d in [4, 8, 12] {
        let m = random::matrix(&mut random::rng(d as u64), d, d);
        g.bench_with_input(BenchmarkId::from_parameter(d), &m, |b, m| b.iter(|| black_box(m.rref())));
    }
    g.finish();
}

fn pullback(c: &mut Criterion) {
    let mut g = c.benchmark_group("pullback");
    for (n, m) in [(2, 3), (4, 5), (5, 6)] {
        let mut rng = random::rng(7);
        let l = LinearMap::new(random::matrix(&mut rng, m, n));
        let d = random::isotropic(&mut rng, m);
        g.bench_function(format!("{n}x{m}"), |b| b.iter(|| black_box(pullback_subspace(&l, d.e()).unwrap())));
    }
    g.finish();
}

fn integrability(c: &mut Criterion) {
    let (s, _) = coupled_r5();
    c.bench_function("integrability/coupled_r5", |b| b.iter(|| black_box(check_integrability(&s).unwrap())));
    let mut rng = random::rng(11);
    let theta = random::two_form(&mut rng, 3, 1);
    let frame = [VectorField::coord(3, 0), VectorField::coord(3, 1)];
    let t = graph_theta(Chart::standard(3), &frame, &theta).unwrap();
    c.bench_function("integrability/theta_graph", |b| b.iter(|| black_box(check_integrability(&t).unwrap())));
}

fn normalize(c: &mut Criterion) {
    let (s, ac) = coupled_r5();
    c.bench_function("normalize_frame/coupled_r5", |b| b.iter(|| black_box(normalize_frame(&s, &ac).unwrap())));
}

criterion_group! {
    name = kernel;
    config = Criterion::default().sample_size(20);
    targets = rref, pullback, integrability, normalize
}
criterion_main!(kernel);
