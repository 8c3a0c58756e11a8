use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use nimgraph_bench::{random_cycle, unit_complete};
use nimgraph_core::strategies::dispatch;
use nimgraph_core::{SolveBudget, Solver};

fn solve_complete(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_unit_complete");
    group.sample_size(10);
    for n in [5, 6, 7] {
        let graph = unit_complete(n);
        group.bench_function(format!("K{n}"), |b| {
            b.iter(|| Solver::new(&graph, SolveBudget::default()).unwrap().solve(&graph.fresh_state()).unwrap())
        });
    }
    group.finish();
}

fn solve_cycle(c: &mut Criterion) {
    let graph = random_cycle(8, 4, 1);
    c.bench_function("solve_C8_cap4", |b| {
        b.iter(|| Solver::new(&graph, SolveBudget::default()).unwrap().solve(&graph.fresh_state()).unwrap())
    });
}

fn strategy_dispatch(c: &mut Criterion) {
    let k7 = unit_complete(7);
    let c8 = random_cycle(8, 4, 1);
    c.bench_function("dispatch_K7", |b| b.iter(|| dispatch(black_box(&k7), &k7.fresh_state())));
    c.bench_function("dispatch_C8", |b| b.iter(|| dispatch(black_box(&c8), &c8.fresh_state())));
}

criterion_group!(benches, solve_complete, solve_cycle, strategy_dispatch);
criterion_main!(benches);
