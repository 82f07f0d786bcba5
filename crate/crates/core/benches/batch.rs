//! Compares the rayon batch runner against the sequential one on a small
//! but realistic workload: depth-1 runs on a constraint-only problem.

use criterion::{criterion_group, criterion_main, Criterion};
use qudit_qaoa::batch::{derive_seed, run_batch, run_batch_sequential, RunTask};
use qudit_qaoa::problems::gen_constraint_only;
use qudit_qaoa::{BuiltProblem, ConstraintMode, QaoaConfig};

fn bench_batch(c: &mut Criterion) {
    let mode = ConstraintMode::DirectPenalty { a: 1 };
    let inst = gen_constraint_only(7, -1.5, 1, 4.0).unwrap();
    let built = BuiltProblem::build(&inst, mode).unwrap();
    let config = QaoaConfig::new(1, mode, 64);
    let tasks: Vec<RunTask<'_>> = (0..8)
        .map(|run| RunTask { problem: &built, config: &config, seed: derive_seed(1, &[0, run]) })
        .collect();

    let mut group = c.benchmark_group("batch_8_runs");
    group.sample_size(10);
    group.bench_function("parallel", |b| b.iter(|| run_batch(&tasks).unwrap()));
    group.bench_function("sequential", |b| b.iter(|| run_batch_sequential(&tasks).unwrap()));
    group.finish();
}

criterion_group!(benches, bench_batch);
criterion_main!(benches);
