use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use mqo_bench::{er_graph, random_bits, random_state};
use mqo_core::localsearch::{maximalize, one_two_flip, one_two_swap};
use mqo_core::pga::{run_trajectory, StopRule};
use mqo_core::{ObjectiveSpec, OptimizerConfig, Problem};
use std::hint::black_box;

const ITERS: usize = 200;

fn trajectories(c: &mut Criterion) {
    let mut group = c.benchmark_group("trajectory_200_steps");
    group.sample_size(20);
    for (n, d) in [(1000, 100.0), (3000, 100.0)] {
        let g = er_graph(n, d, 1);
        for problem in [Problem::Mis, Problem::MaxCut] {
            let spec = match problem {
                Problem::Mis => ObjectiveSpec::mis(),
                Problem::MaxCut => ObjectiveSpec::PerturbedBias { lambda: 0.001 },
            };
            let cfg = OptimizerConfig {
                max_iters: ITERS,
                // Keep stopping rare so most runs take the full step count.
                conv_tol: 0.0,
                check_every: ITERS + 1,
                ..OptimizerConfig::for_problem(problem)
            };
            let rule = StopRule::for_problem(problem);
            let init = random_state(n, spec.domain(), 2);
            let id = BenchmarkId::new(format!("{problem:?}"), format!("{n}x{d}"));
            group.bench_with_input(id, &n, |b, _| {
                b.iter(|| run_trajectory(&spec, &g, black_box(&init), &cfg, rule, None).unwrap())
            });
        }
    }
    group.finish();
}

fn local_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("local_search");
    group.sample_size(20);
    for (n, d) in [(1000, 100.0), (3000, 100.0)] {
        let g = er_graph(n, d, 1);
        let mut maximal = vec![false; n];
        maximalize(&g, &mut maximal);
        group.bench_with_input(BenchmarkId::new("one_two_swap", n), &n, |b, _| {
            b.iter_batched(
                || maximal.clone(),
                |mut set| one_two_swap(&g, &mut set).unwrap(),
                BatchSize::SmallInput,
            )
        });
        let side = random_bits(n, 3);
        group.bench_with_input(BenchmarkId::new("one_two_flip", n), &n, |b, _| {
            b.iter_batched(|| side.clone(), |mut s| one_two_flip(&g, &mut s), BatchSize::SmallInput)
        });
    }
    group.finish();
}

criterion_group!(benches, trajectories, local_search);
criterion_main!(benches);
