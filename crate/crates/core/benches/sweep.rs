use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use whvf::algebra::{rat, BivariatePoly};
use whvf::catalog::{Family, FamilyKind};
use whvf::classifier::ClassifyOptions;
use whvf::dynamics::{estimate_v1_with, PolarSystem};
use whvf::parallel::Execution;
use whvf::sweep::sweep;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn family_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    let opts = ClassifyOptions::default();
    for kind in [FamilyKind::Catalog(Family::S13D3), FamilyKind::Catalog(Family::S11D3)] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, kind), &kind, |b, &kind| {
                b.iter(|| black_box(sweep(kind, 64, 1, &opts, exec).unwrap().agreements))
            });
        }
    }
    group.finish();
}

fn multiplier_ladder(c: &mut Criterion) {
    // x' = -y, y' = x^5 + (1/2) x^2 y
    let x = BivariatePoly::x();
    let y = BivariatePoly::y();
    let q = &x.pow(5) + &(&x.pow(2) * &y).scale(&rat(1, 2));
    let ps = PolarSystem::new(&-&y, &q, 3);
    let mut group = c.benchmark_group("return_map_ladder");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| black_box(estimate_v1_with(&ps, exec).unwrap().value)));
    }
    group.finish();
}

criterion_group!(benches, family_sweep, multiplier_ladder);
criterion_main!(benches);
