use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dicycles::constructions::{generate, ConstructionId};
use dicycles::counting::{check_neighbor_condition_with, count_closed_walks_with, count_cycle_copies_with};
use dicycles::graph::random_oriented;
use dicycles::search::{exhaustive_extremal_with, ExhaustiveOptions, Forbidden};
use dicycles::{Execution, Mode};
use std::hint::black_box;

const MODES: [(&str, Execution); 2] = [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)];

fn cycles(c: &mut Criterion) {
    let g = random_oriented(28, 0.5, 7);
    let mut group = c.benchmark_group("count_cycle_copies/k=6/n=28");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| count_cycle_copies_with(black_box(&g), 6, exec))
        });
    }
    group.finish();
}

fn walks(c: &mut Criterion) {
    let g = random_oriented(120, 0.5, 11);
    let mut group = c.benchmark_group("count_closed_walks/l=9/n=120");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| count_closed_walks_with(black_box(&g), 9, exec))
        });
    }
    group.finish();
}

fn neighbor(c: &mut Criterion) {
    let g = generate(&ConstructionId::BalancedCycleBlowup { d: 4 }, 32, 0).unwrap();
    let mut group = c.benchmark_group("check_neighbor_condition/k=4/n=32");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| check_neighbor_condition_with(black_box(&g), 4, 4, exec))
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("exhaustive_extremal/n=5/k=3/C4");
    group.sample_size(10);
    for (name, exec) in MODES {
        let opts = ExhaustiveOptions { execution: exec, ..Default::default() };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| exhaustive_extremal_with(5, 3, &[Forbidden::Cycle(4)], Mode::Oriented, &opts))
        });
    }
    group.finish();
}

criterion_group!(benches, cycles, walks, neighbor, search);
criterion_main!(benches);
