use std::hint::black_box;

use chabauty::hausdorff::hausdorff_with;
use chabauty::{sample_subgroup, CStarSubgroup, Execution, Method, RSubgroup, Subgroup};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;

fn executions() -> Vec<(&'static str, Execution)> {
    let mut v = vec![("sequential", Execution::Sequential)];
    if Execution::default() != Execution::Sequential {
        v.push(("parallel", Execution::default()));
    }
    v
}

fn distances(c: &mut Criterion) {
    let line_a =
        sample_subgroup(&Subgroup::Real(RSubgroup::Cyclic { r: 0.05 }), 100.0, 1.0).unwrap();
    let line_b = sample_subgroup(&Subgroup::Real(RSubgroup::Line), 100.0, 0.02).unwrap();
    let cyl_a = sample_subgroup(
        &Subgroup::CStar(CStarSubgroup::b(2, Complex64::new(0.02, 2.1)).unwrap()),
        4.0,
        0.05,
    )
    .unwrap();
    let cyl_b = sample_subgroup(
        &Subgroup::CStar(CStarSubgroup::D { m: 6, t: 0.0 }),
        4.0,
        0.05,
    )
    .unwrap();

    let mut group = c.benchmark_group("hausdorff");
    group.sample_size(10);
    for (space, a, b) in [("line", &line_a, &line_b), ("cylinder", &cyl_a, &cyl_b)] {
        for (mode, exec) in executions() {
            for method in [Method::Brute, Method::Grid] {
                let id = BenchmarkId::new(format!("{space}/{method:?}"), mode);
                group.bench_with_input(id, &(a, b), |bench, (a, b)| {
                    bench.iter(|| {
                        hausdorff_with(black_box(*a), black_box(*b), method, exec).unwrap()
                    })
                });
            }
        }
    }
    group.finish();
}

fn sampling(c: &mut Criterion) {
    let full = Subgroup::CStar(CStarSubgroup::Full);
    c.bench_function("sample/full-cylinder", |bench| {
        bench.iter(|| sample_subgroup(black_box(&full), 6.0, 0.02).unwrap())
    });
}

criterion_group!(benches, distances, sampling);
criterion_main!(benches);
