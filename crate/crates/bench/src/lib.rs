//! Benchmark fixtures shared by the criterion targets.

use nimgraph_core::generate::unit;
use nimgraph_core::{generate, Family, GameGraph, WeightSpec};

pub fn unit_complete(n: usize) -> GameGraph {
    unit(Family::Complete { n }).expect("n >= 1")
}

pub fn random_cycle(n: usize, cap: u32, seed: u64) -> GameGraph {
    generate(Family::Cycle { n }, &WeightSpec::Random { cap, seed }).expect("n >= 3")
}
