//! Criterion benches comparing the data-parallel and sequential suite
//! executors on a small generated corpus, plus the exact-volume kernel they
//! share. With the `parallel` feature disabled both executor benches walk
//! the same sequential path, so the comparison is meaningful only on the
//! default feature set.

use abx_core::corpus;
use abx_core::exec::{run_indexed, run_indexed_sequential};
use abx_core::geom::{volume, Polytope};
use abx_core::rat::rat;
use criterion::{criterion_group, criterion_main, Criterion};

fn cross_polytope_like(n: usize) -> Polytope {
    let mut pts = Vec::new();
    for i in 0..n {
        let mut p = vec![rat(0, 1); n];
        p[i] = rat(3, 2);
        pts.push(abx_core::geom::Point::new(p.clone()));
        p[i] = rat(-3, 2);
        pts.push(abx_core::geom::Point::new(p));
    }
    Polytope::hull(n, &pts).unwrap()
}

fn bench_volume(c: &mut Criterion) {
    let body = cross_polytope_like(4);
    c.bench_function("volume_cross_4d", |b| {
        b.iter(|| volume(std::hint::black_box(&body)))
    });
}

/// The per-instance work of a small body suite: generate, dualize, measure.
fn instance_work(n: usize, i: usize) -> abx_core::Result<String> {
    let mut rng = corpus::stream(12, 40, i);
    let k = corpus::random_antiblocking(n, &mut rng)?;
    let dual = abx_core::antiblocking::abdual(&k)?;
    Ok(abx_core::rat::format_rat(&(k.volume() * dual.volume())))
}

fn bench_executors(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite_executor");
    group.sample_size(10);
    group.bench_function("parallel_32x3d", |b| {
        b.iter(|| run_indexed(32, |i| instance_work(3, i)).unwrap())
    });
    group.bench_function("sequential_32x3d", |b| {
        b.iter(|| run_indexed_sequential(32, |i| instance_work(3, i)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_volume, bench_executors);
criterion_main!(benches);
