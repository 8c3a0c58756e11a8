//! Named verification suites with their default sizes.
//!
//! Every suite checks closed-form claims against the oracle and re-audits
//! every oracle memo table it builds. Sampling is seed-derived, so a suite
//! produces the same CSV on every run.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::generate::{generate, planted_mutual_pair, unit, Family, FamilyError, WeightSpec};
use crate::graph::{label, GameGraph, GameState, Vertex};
use crate::solver::{SolveBudget, Solver, Winner};
use crate::strategies::{
    dispatch, even_cycle_prescribed_moves, even_cycle_strategy, k2j_strategy, odd_cycle_strategy, path_strategy,
    ssb_hubs, ssb_strategy, Prediction, StrategyPlayer,
};
use crate::structures::PositiveView;
use crate::verify::{
    audit_even_cycle_uniqueness, check_complete_arbitrary_weights, fmt_moves, oracle_label, verify_strategy_exhaustive, Claimant, Instance,
    InstanceRow, StrategyCheck, VerificationReport, VerifyError,
};

/// Sizes and seeds for every suite. `Default` gives the standard coverage.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteParams {
    pub budget: SolveBudget,
    pub seed: u64,
    pub max_path_len: usize,
    pub max_odd_cycle: usize,
    pub odd_cycle_cap: u32,
    /// Odd cycles up to this length are enumerated exhaustively.
    pub odd_cycle_exhaustive_up_to: usize,
    pub odd_cycle_samples: usize,
    pub c4_cap: u32,
    pub c6_cap: u32,
    pub c8_samples: usize,
    pub c8_cap: u32,
    pub max_j: usize,
    pub max_n: usize,
    pub mutual_graphs: usize,
    pub mutual_max_vertices: usize,
    pub mutual_edge_probability: f64,
    pub k4_cap: u32,
    pub k5_samples: usize,
    pub k5_cap: u32,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self {
            budget: SolveBudget::default(),
            seed: 2009,
            max_path_len: 12,
            max_odd_cycle: 11,
            odd_cycle_cap: 3,
            odd_cycle_exhaustive_up_to: 5,
            odd_cycle_samples: 300,
            c4_cap: 4,
            c6_cap: 3,
            c8_samples: 200,
            c8_cap: 4,
            max_j: 6,
            max_n: 7,
            mutual_graphs: 100,
            mutual_max_vertices: 8,
            mutual_edge_probability: 0.4,
            k4_cap: 3,
            k5_samples: 500,
            k5_cap: 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Paths,
    OddCycles,
    EvenCycles,
    Examples,
    K2j,
    Ssb,
    Mutual,
    CompleteWeights,
    All,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Paths,
        Suite::OddCycles,
        Suite::EvenCycles,
        Suite::Examples,
        Suite::K2j,
        Suite::Ssb,
        Suite::Mutual,
        Suite::CompleteWeights,
        Suite::All,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Paths => "paths",
            Suite::OddCycles => "odd-cycles",
            Suite::EvenCycles => "even-cycles",
            Suite::Examples => "examples",
            Suite::K2j => "k2j",
            Suite::Ssb => "ssb",
            Suite::Mutual => "mutual",
            Suite::CompleteWeights => "complete-weights",
            Suite::All => "all",
        }
    }

    pub fn run(&self, params: &SuiteParams) -> Result<VerificationReport, VerifyError> {
        let began = Instant::now();
        let mut report = match self {
            Suite::Paths => paths(params),
            Suite::OddCycles => odd_cycles(params),
            Suite::EvenCycles => even_cycles(params),
            Suite::Examples => examples(params),
            Suite::K2j => k2j(params),
            Suite::Ssb => ssb(params),
            Suite::Mutual => mutual(params),
            Suite::CompleteWeights => complete_weights(params),
            Suite::All => {
                let mut all = VerificationReport::new("all", "every suite");
                for suite in &Suite::ALL[..Suite::ALL.len() - 1] {
                    all.absorb(suite.run(params)?);
                }
                Ok(all)
            }
        }?;
        report.elapsed = began.elapsed();
        Ok(report)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(Suite::name).collect();
            format!("unknown suite `{s}` (expected one of: {})", names.join(", "))
        })
    }
}

fn weights_label(family: Family, weights: &[u32]) -> String {
    let list: Vec<String> = weights.iter().map(u32::to_string).collect();
    format!("{family} w={}", list.join(","))
}

fn instance_of(family: Family, weights: Vec<u32>) -> Result<Instance, FamilyError> {
    let params = weights_label(family, &weights);
    let graph = generate(family, &WeightSpec::Explicit { weights })?;
    Ok(Instance::new(family.name(), params, graph))
}

/// Every weighting of `family` with weights in `1..=cap`, in lexicographic
/// order.
pub fn all_weightings(family: Family, cap: u32) -> Result<Vec<Instance>, FamilyError> {
    let edges = family.structure()?.len();
    let mut weights = vec![1; edges];
    let mut out = Vec::new();
    loop {
        out.push(instance_of(family, weights.clone())?);
        // odometer, last edge fastest
        let mut i = edges;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if weights[i] < cap {
                weights[i] += 1;
                break;
            }
            weights[i] = 1;
        }
    }
}

/// `count` seeded random weightings of `family` in `1..=cap`.
pub fn sampled_weightings(family: Family, cap: u32, count: usize, seed: u64) -> Vec<Instance> {
    (0..count)
        .map(|i| {
            let sample_seed = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((family.param() as u64) << 40) ^ i as u64;
            let graph = generate(family, &WeightSpec::Random { cap, seed: sample_seed }).expect("valid family");
            let weights: Vec<u32> = graph.edges().iter().map(|e| e.w).collect();
            Instance::new(family.name(), weights_label(family, &weights), graph)
        })
        .collect()
}

struct RowBuilder<'a> {
    inst: &'a Instance,
    start: Vertex,
}

impl RowBuilder<'_> {
    fn row(&self, prediction: impl Into<String>, oracle: Winner, ok: bool, states: u64) -> InstanceRow {
        InstanceRow {
            family: self.inst.family.clone(),
            params: self.inst.params.clone(),
            start: label(self.start),
            prediction: prediction.into(),
            oracle: oracle_label(oracle).into(),
            verdict: if ok { "pass" } else { "FAIL" }.into(),
            states_visited: states,
        }
    }
}

fn prediction_of(outcome: Result<crate::strategies::Outcome, crate::strategies::StrategyError>) -> Prediction {
    outcome.map_or(Prediction::NoClaim, |o| o.prediction)
}

fn record_check(report: &mut VerificationReport, inst: &Instance, check: &StrategyCheck) -> bool {
    match &check.failure {
        None => true,
        Some(f) => {
            report.failures.push(crate::verify::Failure { instance: inst.id(), ..f.clone() });
            false
        }
    }
}

fn claim_matches(prediction: Prediction, winner: Winner) -> bool {
    matches!(
        (prediction, winner),
        (Prediction::P1Wins, Winner::MoverWins) | (Prediction::P2Wins, Winner::OpponentWins)
    )
}

/// Unit paths: the mover wins iff one side of the token has odd length.
fn paths(params: &SuiteParams) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::new("paths", format!("unit paths of length 1..={}, all starts", params.max_path_len));
    for len in 1..=params.max_path_len {
        let family = Family::Path { n: len + 1 };
        let inst = Instance::new("path", format!("length={len}"), unit(family)?);
        let mut solver = Solver::new(&inst.graph, params.budget)?;
        for start in 0..=len {
            let state = inst.graph.fresh_state_at(start);
            let analysis = solver.solve(&state)?;
            // sides of lengths `start` and `len - start`
            let parity_says_mover = start % 2 == 1 || (len - start) % 2 == 1;
            let prediction = prediction_of(path_strategy(&inst.graph, &state));
            let mut ok = parity_says_mover == (analysis.winner == Winner::MoverWins);
            if !ok {
                report.fail(&inst.id(), &state, "parity rule", oracle_label(analysis.winner));
            }
            if prediction != Prediction::NoClaim && !claim_matches(prediction, analysis.winner) {
                ok = false;
                report.fail(&inst.id(), &state, prediction.to_string(), oracle_label(analysis.winner));
            }
            report.rows.push(RowBuilder { inst: &inst, start }.row(prediction.to_string(), analysis.winner, ok, analysis.states_visited));
            report.instances_checked += 1;
        }
        report.audit_solver(&inst.id(), &solver);
    }
    Ok(report)
}

/// Odd cycles: the mover always wins, and the break-the-cycle strategy
/// survives every adversary line.
fn odd_cycles(params: &SuiteParams) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::new(
        "odd-cycles",
        format!(
            "C3..C{} weights 1..={}, exhaustive up to C{}, {} samples beyond (seed {}), all starts",
            params.max_odd_cycle,
            params.odd_cycle_cap,
            params.odd_cycle_exhaustive_up_to,
            params.odd_cycle_samples,
            params.seed
        ),
    );
    for n in (3..=params.max_odd_cycle).step_by(2) {
        let family = Family::Cycle { n };
        let instances = if n <= params.odd_cycle_exhaustive_up_to {
            all_weightings(family, params.odd_cycle_cap)?
        } else {
            sampled_weightings(family, params.odd_cycle_cap, params.odd_cycle_samples, params.seed)
        };
        for inst in &instances {
            let mut solver = Solver::new(&inst.graph, params.budget)?;
            for start in 0..n {
                let state = inst.graph.fresh_state_at(start);
                let analysis = solver.solve(&state)?;
                let prediction = prediction_of(odd_cycle_strategy(&inst.graph, &state));
                let mut ok = analysis.winner == Winner::MoverWins && prediction == Prediction::P1Wins;
                if !ok {
                    report.fail(&inst.id(), &state, "MoverWins / P1Wins", format!("{} / {prediction}", oracle_label(analysis.winner)));
                }
                let check = verify_strategy_exhaustive(&inst.graph, &state, &StrategyPlayer::OddCycle, Claimant::Mover, params.budget)?;
                ok &= record_check(&mut report, inst, &check);
                report.rows.push(RowBuilder { inst, start }.row(prediction.to_string(), analysis.winner, ok, analysis.states_visited));
                report.instances_checked += 1;
            }
            report.audit_solver(&inst.id(), &solver);
        }
    }
    Ok(report)
}

/// Even cycles: minimum-weight reduction predicts the oracle and the
/// strategy wins for whichever side it favors.
pub fn even_cycle_claims(params: &SuiteParams) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::new(
        "even-cycles",
        format!(
            "C4 weights 1..={} and C6 weights 1..={} exhaustive, {} C8 samples weights 1..={} (seed {}), all starts",
            params.c4_cap, params.c6_cap, params.c8_samples, params.c8_cap, params.seed
        ),
    );
    let groups = [
        all_weightings(Family::Cycle { n: 4 }, params.c4_cap)?,
        all_weightings(Family::Cycle { n: 6 }, params.c6_cap)?,
        sampled_weightings(Family::Cycle { n: 8 }, params.c8_cap, params.c8_samples, params.seed),
    ];
    for inst in groups.iter().flatten() {
        let mut solver = Solver::new(&inst.graph, params.budget)?;
        for start in 0..inst.graph.vertex_count() {
            let state = inst.graph.fresh_state_at(start);
            let analysis = solver.solve(&state)?;
            let prediction = prediction_of(even_cycle_strategy(&inst.graph, &state));
            let mut ok = claim_matches(prediction, analysis.winner);
            if !ok {
                report.fail(&inst.id(), &state, prediction.to_string(), oracle_label(analysis.winner));
            }
            let claimant = if analysis.winner == Winner::MoverWins { Claimant::Mover } else { Claimant::Defender };
            let check = verify_strategy_exhaustive(&inst.graph, &state, &StrategyPlayer::EvenCycle, claimant, params.budget)?;
            ok &= record_check(&mut report, inst, &check);
            report.rows.push(RowBuilder { inst, start }.row(prediction.to_string(), analysis.winner, ok, analysis.states_visited));
            report.instances_checked += 1;
        }
        report.audit_solver(&inst.id(), &solver);
    }
    Ok(report)
}

/// Claims plus the exhaustive uniqueness audit on the C4 and C6 families.
fn even_cycles(params: &SuiteParams) -> Result<VerificationReport, VerifyError> {
    let mut report = even_cycle_claims(params)?;
    for (len, cap) in [(4, params.c4_cap), (6, params.c6_cap)] {
        let audit = audit_even_cycle_uniqueness(len, cap, params.budget)?;
        report.ranges = format!("{}; uniqueness {}", report.ranges, audit.ranges);
        report.absorb(audit);
    }
    Ok(report)
}

/// The worked examples: two four-cycles with opposite outcomes and a
/// six-cycle with a prescribed first move.
pub fn example_left_c4() -> GameGraph {
    generate(Family::Cycle { n: 4 }, &WeightSpec::Explicit { weights: vec![3, 2, 4, 4] }).expect("valid")
}

pub fn example_right_c4() -> GameGraph {
    generate(Family::Cycle { n: 4 }, &WeightSpec::Explicit { weights: vec![2, 4, 3, 2] }).expect("valid")
}

pub fn example_c6() -> GameGraph {
    generate(Family::Cycle { n: 6 }, &WeightSpec::Explicit { weights: vec![6, 5, 6, 2, 4, 5] }).expect("valid")
}

fn examples(params: &SuiteParams) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::new("examples", "left/right C4 goldens, C6 prescribed move");
    let cases = [
        (Instance::new("cycle", "left C4 w=3,2,4,4", example_left_c4()), Winner::MoverWins),
        (Instance::new("cycle", "right C4 w=2,4,3,2", example_right_c4()), Winner::OpponentWins),
        (Instance::new("cycle", "C6 w=6,5,6,2,4,5", example_c6()), Winner::MoverWins),
    ];
    for (inst, expected) in &cases {
        let mut solver = Solver::new(&inst.graph, params.budget)?;
        let state = inst.graph.fresh_state();
        let analysis = solver.solve(&state)?;
        let outcome = even_cycle_strategy(&inst.graph, &state);
        let prediction = prediction_of(outcome.clone());
        let mut ok = analysis.winner == *expected && claim_matches(prediction, analysis.winner);
        if !ok {
            report.fail(&inst.id(), &state, oracle_label(*expected), format!("{} / {prediction}", oracle_label(analysis.winner)));
        }
        let prescribed = even_cycle_prescribed_moves(&inst.graph, &state).unwrap_or_default();
        if prescribed != analysis.optimal_moves {
            ok = false;
            report.fail(&inst.id(), &state, fmt_moves(&prescribed), fmt_moves(&analysis.optimal_moves));
        }
        if inst.graph.vertex_count() == 6 {
            let chosen = outcome.ok().and_then(|o| o.chosen);
            let golden = crate::Move::new(1, 2);
            if chosen != Some(golden) || !analysis.optimal_moves.contains(&golden) {
                ok = false;
                report.fail(&inst.id(), &state, "first move v2:2, oracle-optimal", format!("{chosen:?}"));
            }
        }
        let claimant = if *expected == Winner::MoverWins { Claimant::Mover } else { Claimant::Defender };
        let check = verify_strategy_exhaustive(&inst.graph, &state, &StrategyPlayer::EvenCycle, claimant, params.budget)?;
        ok &= record_check(&mut report, inst, &check);
        report.rows.push(RowBuilder { inst, start: state.token }.row(prediction.to_string(), analysis.winner, ok, analysis.states_visited));
        report.instances_checked += 1;
        report.audit_solver(&inst.id(), &solver);
    }
    Ok(report)
}

/// Unit `K_{2,j}` from a hub: the second player wins by always returning to
/// the other hub.
fn k2j(params: &SuiteParams) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::new("k2j", format!("unit K2j, j=1..={}, both hub starts", params.max_j));
    for j in 1..=params.max_j {
        let inst = Instance::new("k2j", format!("j={j}"), unit(Family::CompleteBipartite { j })?);
        let mut solver = Solver::new(&inst.graph, params.budget)?;
        for (hub, other) in [(0, 1), (1, 0)] {
            let state = inst.graph.fresh_state_at(hub);
            let analysis = solver.solve(&state)?;
            let prediction = prediction_of(k2j_strategy(&inst.graph, &state));
            let mut ok = analysis.winner == Winner::OpponentWins && prediction == Prediction::P2Wins;
            if !ok {
                report.fail(&inst.id(), &state, "OpponentWins / P2Wins", format!("{} / {prediction}", oracle_label(analysis.winner)));
            }
            let player = StrategyPlayer::Hubs(hub, other);
            let check = verify_strategy_exhaustive(&inst.graph, &state, &player, Claimant::Defender, params.budget)?;
            ok &= record_check(&mut report, &inst, &check);
            report.rows.push(RowBuilder { inst: &inst, start: hub }.row(prediction.to_string(), analysis.winner, ok, analysis.states_visited));
            report.instances_checked += 1;
        }
        report.audit_solver(&inst.id(), &solver);
    }
    Ok(report)
}

/// Checks an SSB-strategy claim from `state`: oracle agreement, exhaustive
/// win, where the adversary gets stuck, and that the claimant stays on the
/// SSB subgraph.
fn check_ssb_claim(
    report: &mut VerificationReport,
    inst: &Instance,
    solver: &mut Solver<'_>,
    state: &GameState,
    budget: SolveBudget,
) -> Result<(), VerifyError> {
    let graph = &inst.graph;
    let analysis = solver.solve(state)?;
    let prediction = prediction_of(ssb_strategy(graph, state));
    let mut ok = analysis.winner == Winner::MoverWins && prediction == Prediction::P1Wins;
    if !ok {
        report.fail(&inst.id(), state, "MoverWins / P1Wins", format!("{} / {prediction}", oracle_label(analysis.winner)));
    }
    if let Some((a, b)) = ssb_hubs(graph, state) {
        let check = verify_strategy_exhaustive(graph, state, &StrategyPlayer::Hubs(a, b), Claimant::Mover, budget)?;
        ok &= record_check(report, inst, &check);

        let view = PositiveView::of_state(graph, state);
        let common: Vec<Vertex> = view.neighbors(a).iter().copied().filter(|&c| c != b).collect();
        let expected_stuck = if common.len().is_multiple_of(2) { b } else { a };
        if check.passed() && check.adversary_stuck_at != BTreeSet::from([expected_stuck]) {
            ok = false;
            report.fail(
                &inst.id(),
                state,
                format!("adversary stuck on {}", label(expected_stuck)),
                format!("stuck on {:?}", check.adversary_stuck_at.iter().map(|&v| label(v)).collect::<Vec<_>>()),
            );
        }
        let mut ssb_edges: BTreeSet<usize> = graph.edge_between(a, b).into_iter().collect();
        for &c in &common {
            ssb_edges.extend(graph.edge_between(a, c));
            ssb_edges.extend(graph.edge_between(b, c));
        }
        if !check.claimant_edges.is_subset(&ssb_edges) {
            ok = false;
            report.fail(&inst.id(), state, "claimant confined to the SSB subgraph", "used an outside edge");
        }
    }
    report.rows.push(RowBuilder { inst, start: state.token }.row(prediction.to_string(), analysis.winner, ok, analysis.states_visited));
    report.instances_checked += 1;
    Ok(())
}

/// Unit `SSB_j` from either hub and unit `K_n` from every vertex. Leaf
/// starts of `SSB_j` are swept against the dispatcher's prediction.
fn ssb(params: &SuiteParams) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::new(
        "ssb",
        format!("unit SSB_j j=1..={} (hub starts strategy-checked, leaf starts predictor-checked), unit K_n n=2..={} all starts", params.max_j, params.max_n),
    );
    for j in 1..=params.max_j {
        let inst = Instance::new("ssb", format!("j={j}"), unit(Family::Ssb { j })?);
        let mut solver = Solver::new(&inst.graph, params.budget)?;
        for hub in [0, 1] {
            check_ssb_claim(&mut report, &inst, &mut solver, &inst.graph.fresh_state_at(hub), params.budget)?;
        }
        for leaf in 2..j + 2 {
            let state = inst.graph.fresh_state_at(leaf);
            let analysis = solver.solve(&state)?;
            let d = dispatch(&inst.graph, &state);
            let ok = d.prediction == Prediction::NoClaim || claim_matches(d.prediction, analysis.winner);
            if !ok {
                report.fail(&inst.id(), &state, d.prediction.to_string(), oracle_label(analysis.winner));
            }
            report.rows.push(RowBuilder { inst: &inst, start: leaf }.row(d.prediction.to_string(), analysis.winner, ok, analysis.states_visited));
            report.instances_checked += 1;
        }
        report.audit_solver(&inst.id(), &solver);
    }
    for n in 2..=params.max_n {
        let inst = Instance::new("complete", format!("n={n}"), unit(Family::Complete { n })?);
        let mut solver = Solver::new(&inst.graph, params.budget)?;
        for start in 0..n {
            check_ssb_claim(&mut report, &inst, &mut solver, &inst.graph.fresh_state_at(start), params.budget)?;
        }
        report.audit_solver(&inst.id(), &solver);
    }
    Ok(report)
}

/// Random unit graphs with a planted mutually adjacent pair and the token
/// on the pair.
fn mutual(params: &SuiteParams) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::new(
        "mutual",
        format!(
            "{} random unit graphs on <= {} vertices with a planted mutually adjacent pair (seed {})",
            params.mutual_graphs, params.mutual_max_vertices, params.seed
        ),
    );
    for i in 0..params.mutual_graphs {
        let seed = params.seed.wrapping_mul(0x2545_F491_4F6C_DD1D) ^ i as u64;
        let graph = planted_mutual_pair(params.mutual_max_vertices, params.mutual_edge_probability, seed)?;
        let inst = Instance::new("planted", format!("#{i} n={} m={}", graph.vertex_count(), graph.edges().len()), graph);
        let mut solver = Solver::new(&inst.graph, params.budget)?;
        check_ssb_claim(&mut report, &inst, &mut solver, &inst.graph.fresh_state(), params.budget)?;
        report.audit_solver(&inst.id(), &solver);
    }
    Ok(report)
}

fn complete_weights(params: &SuiteParams) -> Result<VerificationReport, VerifyError> {
    let mut report = check_complete_arbitrary_weights(4, params.k4_cap, None, params.seed, params.budget)?;
    let k5 = check_complete_arbitrary_weights(5, params.k5_cap, Some(params.k5_samples), params.seed, params.budget)?;
    report.ranges = format!("{}; {}", report.ranges, k5.ranges);
    report.absorb(k5);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weighting_enumeration() {
        let all = all_weightings(Family::Cycle { n: 4 }, 3).unwrap();
        assert_eq!(all.len(), 81);
        assert_eq!(all[0].params, "cycle:4 w=1,1,1,1");
        assert_eq!(all[1].params, "cycle:4 w=1,1,1,2");
        assert_eq!(all[80].params, "cycle:4 w=3,3,3,3");
    }

    #[test]
    fn sampling_is_seeded() {
        let a = sampled_weightings(Family::Cycle { n: 8 }, 4, 5, 7);
        let b = sampled_weightings(Family::Cycle { n: 8 }, 4, 5, 7);
        assert_eq!(a.iter().map(|i| &i.params).collect::<Vec<_>>(), b.iter().map(|i| &i.params).collect::<Vec<_>>());
        assert_ne!(a[0].params, a[1].params);
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let params = SuiteParams { max_j: 3, max_n: 5, max_path_len: 6, ..SuiteParams::default() };
        for suite in [Suite::Paths, Suite::K2j, Suite::Ssb, Suite::Examples] {
            let report = suite.run(&params).unwrap();
            assert!(report.passed(), "{}", report.render_table());
            assert!(report.memo_states_audited > 0);
        }
    }
}
