use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use groupsparse::exact::{brute_force_wmc_with, WeightVector};
use groupsparse::par::Exec;
use groupsparse::relax::{hierarchical_frontier_with, lambda_sweep_with, pareto_frontier_with, FrontierSolver};
use groupsparse::{fixtures, GroupStructure};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn instance(m: usize) -> (GroupStructure, WeightVector) {
    let mut rng = ChaCha8Rng::seed_from_u64(m as u64);
    let s = fixtures::random_loopless_pairwise(&mut rng, m, 2);
    let w = WeightVector::new((0..s.ground_size()).map(|_| rng.random::<f64>()).collect()).unwrap();
    (s, w)
}

fn frontier(c: &mut Criterion) {
    let mut group = c.benchmark_group("dp_frontier");
    group.sample_size(10);
    for m in [32, 64] {
        let (s, w) = instance(m);
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, m), &m, |b, _| {
                b.iter(|| pareto_frontier_with(exec, black_box(&s), &w, FrontierSolver::Dp).unwrap())
            });
        }
    }
    group.finish();
}

fn brute_force(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force_wmc");
    group.sample_size(10);
    let (s, w) = instance(18);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| brute_force_wmc_with(exec, black_box(&s), &w, 6, None).unwrap()));
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("lambda_sweep");
    group.sample_size(10);
    let (s, w) = instance(40);
    let grid: Vec<f64> = (1..=32).map(|i| i as f64 / 16.0).collect();
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| lambda_sweep_with(exec, black_box(&s), &w, &grid).unwrap()));
    }
    group.finish();
}

fn tree_frontier(c: &mut Criterion) {
    let mut group = c.benchmark_group("tree_frontier");
    group.sample_size(10);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let t = fixtures::random_binary_tree(&mut rng, 256);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| hierarchical_frontier_with(exec, black_box(&t)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, frontier, brute_force, sweep, tree_frontier);
criterion_main!(benches);
