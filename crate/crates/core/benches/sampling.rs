use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tableaux::charvar::{eigenspace_dims, prepare};
use tableaux::gallery;
use tableaux::moduli::{agreement_sweep, involutivity_ideal_with, parametric_endovolutive};
use tableaux::par::Execution;

const PATHS: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn eigenspaces(c: &mut Criterion) {
    let p = prepare(&gallery::hankel(), 0).unwrap();
    let mut g = c.benchmark_group("eigenspace_dims");
    for (name, exec) in PATHS {
        g.bench_function(BenchmarkId::new(name, 64), |b| {
            b.iter(|| eigenspace_dims(&p.blocks, 64, 0, exec).unwrap())
        });
    }
    g.finish();
}

fn moduli(c: &mut Criterion) {
    let p = parametric_endovolutive(3, 4, &[3, 3, 2, 0]).unwrap();
    let mut g = c.benchmark_group("involutivity_ideal");
    g.sample_size(20);
    for (name, exec) in PATHS {
        g.bench_function(name, |b| b.iter(|| involutivity_ideal_with(&p, exec)));
    }
    g.finish();
    let ideal = involutivity_ideal_with(&p, Execution::default());
    let mut g = c.benchmark_group("agreement_sweep");
    g.sample_size(20);
    for (name, exec) in PATHS {
        g.bench_function(BenchmarkId::new(name, 200), |b| {
            b.iter(|| agreement_sweep(&p, &ideal, &[], 200, 0, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, eigenspaces, moduli);
criterion_main!(benches);
