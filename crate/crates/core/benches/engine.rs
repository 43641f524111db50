use std::hint::black_box;

use bethe_core::centralizer;
use bethe_core::envelope;
use bethe_core::par;
use bethe_core::sampling;
use bethe_core::talalaev;
use bethe_core::{LieAlgebraSpec, LieKind};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

/// `None` is the default rayon pool; `Some(1)` pins everything to one thread.
const MODES: [(&str, Option<usize>); 2] = [("sequential", Some(1)), ("parallel", None)];

fn q_family(c: &mut Criterion) {
    let gl3 = LieAlgebraSpec::build(LieKind::Gl, 3).unwrap();
    let mut g = c.benchmark_group("compute_q_gl3");
    g.sample_size(10);
    for (name, w) in MODES {
        g.bench_function(BenchmarkId::new(name, 3), |b| {
            b.iter(|| par::with_workers(w, || talalaev::compute_q(&gl3, black_box(3)).unwrap()))
        });
    }
    g.finish();
}

fn commute(c: &mut Criterion) {
    let gl2 = LieAlgebraSpec::build(LieKind::Gl, 2).unwrap();
    let q = talalaev::compute_q(&gl2, 6).unwrap();
    let mut g = c.benchmark_group("commute_gl2");
    g.sample_size(10);
    for (name, w) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| par::with_workers(w, || talalaev::check_pairwise_commute(&gl2, black_box(&q))))
        });
    }
    g.finish();
}

fn sweep(c: &mut Criterion) {
    let sl2 = LieAlgebraSpec::build(LieKind::Sl, 2).unwrap();
    let comps = centralizer::graded_components(4, 10);
    let mut g = c.benchmark_group("s1bar_sweep_sl2");
    g.sample_size(10);
    for (name, w) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| {
                par::with_workers(w, || {
                    centralizer::classical_sweep(&sl2, centralizer::ClassicalTarget::S1Bar, black_box(&comps)).unwrap()
                })
            })
        });
    }
    g.finish();
}

fn pbw_products(c: &mut Criterion) {
    let sl3 = LieAlgebraSpec::build(LieKind::Sl, 3).unwrap();
    let mut rng = sampling::seeded_rng(7);
    let pairs: Vec<_> = (0..16)
        .map(|_| {
            let a = sampling::random_env_poly(&sl3, &mut rng, 4, 3, 4);
            let b = sampling::random_env_poly(&sl3, &mut rng, 4, 3, 4);
            (a, b)
        })
        .collect();
    let mut g = c.benchmark_group("pbw_products_sl3");
    for (name, w) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| par::with_workers(w, || par::map(&pairs, |(x, y)| envelope::normal_product(&sl3, x, y))))
        });
    }
    g.finish();
}

criterion_group!(benches, q_family, commute, sweep, pbw_products);
criterion_main!(benches);
