//! Exhaustive verification: strategies against every adversary line,
//! predictors against the oracle, and the even-cycle uniqueness audit.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Duration;

use rustc_hash::FxHashSet;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{label, GameGraph, GameState, Vertex};
use crate::solver::{SolveBudget, SolveError, Solver, StateCodec, Winner};
use crate::structures::identical_options;
use crate::strategies::{dispatch, even_cycle_prescribed_moves, Player, Prediction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("verification budget of {max_states} states exceeded")]
    BudgetExceeded { max_states: u64 },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Family(#[from] crate::generate::FamilyError),
}

/// Which side the strategy plays.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claimant {
    /// The player to move at the start position.
    Mover,
    /// The other player; the adversary moves first.
    Defender,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub instance: String,
    pub state: String,
    pub expected: String,
    pub observed: String,
}

/// Result of playing a strategy against all adversary lines from one start.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StrategyCheck {
    pub failure: Option<Failure>,
    /// Distinct (state, side to move) nodes explored.
    pub states_explored: u64,
    /// Vertices where the adversary ended up without a move.
    pub adversary_stuck_at: BTreeSet<Vertex>,
    /// Edge indices the claimant traversed on some line.
    pub claimant_edges: BTreeSet<usize>,
    /// Adversary moves skipped as identical to an explored one. Always zero
    /// under [`Branching::AllMoves`].
    pub pruned_moves: u64,
}

/// How the adversary branches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Branching {
    /// Every legal move. Independent of the option-equivalence reasoning.
    #[default]
    AllMoves,
    /// One move per (identical-option class, new weight). Faster, but only
    /// as sound as the identical-options relation itself.
    IdenticalOptions,
}

impl StrategyCheck {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

struct Explorer<'a> {
    graph: &'a GameGraph,
    player: &'a dyn Player,
    codec: StateCodec,
    done: FxHashSet<(u128, bool)>,
    max_states: u64,
    branching: Branching,
    check: StrategyCheck,
}

impl Explorer<'_> {
    fn fail(&mut self, state: &GameState, expected: &str, observed: String) -> bool {
        self.check.failure = Some(Failure {
            instance: String::new(),
            state: state.to_string(),
            expected: expected.to_string(),
            observed,
        });
        false
    }

    fn explore(&mut self, state: &GameState, claimant_to_move: bool) -> Result<bool, VerifyError> {
        let key = (self.codec.encode(state), claimant_to_move);
        if self.done.contains(&key) {
            return Ok(true);
        }
        if self.done.len() as u64 >= self.max_states {
            return Err(VerifyError::BudgetExceeded { max_states: self.max_states });
        }
        if claimant_to_move {
            if self.graph.is_terminal(state) {
                return Ok(self.fail(state, "claimant has a move", "claimant is stuck".into()));
            }
            let Some(mv) = self.player.choose(self.graph, state) else {
                return Ok(self.fail(state, "a strategy move", format!("{} made no claim", self.player.name())));
            };
            let child = match self.graph.apply_move(state, mv) {
                Ok(child) => child,
                Err(e) => return Ok(self.fail(state, "a legal move", format!("{mv}: {e}"))),
            };
            let edge = self.graph.edge_between(state.token, mv.to).expect("legal move has an edge");
            self.check.claimant_edges.insert(edge);
            if !self.explore(&child, false)? {
                return Ok(false);
            }
        } else if self.graph.is_terminal(state) {
            self.check.adversary_stuck_at.insert(state.token);
        } else {
            let mut moves = self.graph.legal_moves(state);
            if self.branching == Branching::IdenticalOptions {
                let classes = identical_options(self.graph, state);
                let representative = |v: Vertex| classes.iter().find(|c| c.contains(&v)).map_or(v, |c| c[0]);
                let before = moves.len();
                moves.retain(|mv| representative(mv.to) == mv.to);
                self.check.pruned_moves += (before - moves.len()) as u64;
            }
            for mv in moves {
                let child = self.graph.apply_move(state, mv).expect("legal move");
                if !self.explore(&child, true)? {
                    return Ok(false);
                }
            }
        }
        self.done.insert(key);
        Ok(true)
    }
}

/// Plays `player` for the claimant against every adversary move from
/// `start`. Passes iff every line ends with the adversary unable to move.
pub fn verify_strategy_exhaustive(
    graph: &GameGraph,
    start: &GameState,
    player: &dyn Player,
    claimant: Claimant,
    budget: SolveBudget,
) -> Result<StrategyCheck, VerifyError> {
    verify_strategy_with(graph, start, player, claimant, budget, Branching::AllMoves)
}

/// [`verify_strategy_exhaustive`] with a choice of adversary branching.
pub fn verify_strategy_with(
    graph: &GameGraph,
    start: &GameState,
    player: &dyn Player,
    claimant: Claimant,
    budget: SolveBudget,
    branching: Branching,
) -> Result<StrategyCheck, VerifyError> {
    graph.check_state(start).map_err(SolveError::from)?;
    let codec = StateCodec::new(graph).ok_or(SolveError::StateSpaceTooLarge)?;
    let mut explorer = Explorer {
        graph,
        player,
        codec,
        done: FxHashSet::default(),
        max_states: budget.max_states,
        branching,
        check: StrategyCheck::default(),
    };
    explorer.explore(start, claimant == Claimant::Mover)?;
    explorer.check.states_explored = explorer.done.len() as u64;
    Ok(explorer.check)
}

/// One CSV row per checked (instance, start).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceRow {
    pub family: String,
    pub params: String,
    pub start: String,
    pub prediction: String,
    pub oracle: String,
    pub verdict: String,
    pub states_visited: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub suite: String,
    /// Family and parameter ranges covered.
    pub ranges: String,
    pub instances_checked: u64,
    pub failures: Vec<Failure>,
    pub rows: Vec<InstanceRow>,
    /// Memo entries re-checked for mex consistency.
    pub memo_states_audited: u64,
    /// Memo entries whose stored value disagreed with the mex of children.
    pub memo_violations: u64,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn new(suite: &str, ranges: impl Into<String>) -> Self {
        Self { suite: suite.to_string(), ranges: ranges.into(), ..Self::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, instance: &str, state: &GameState, expected: impl Into<String>, observed: impl Into<String>) {
        self.failures.push(Failure {
            instance: instance.to_string(),
            state: state.to_string(),
            expected: expected.into(),
            observed: observed.into(),
        });
    }

    /// Appends another report's rows, failures and counters.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.instances_checked += other.instances_checked;
        self.failures.extend(other.failures);
        self.rows.extend(other.rows);
        self.memo_states_audited += other.memo_states_audited;
        self.memo_violations += other.memo_violations;
        self.elapsed += other.elapsed;
    }

    /// Re-checks every memo entry of `solver`, recording a failure on the
    /// first inconsistency.
    pub fn audit_solver(&mut self, instance: &str, solver: &Solver<'_>) {
        match solver.audit() {
            Ok(n) => self.memo_states_audited += n,
            Err(v) => {
                self.memo_violations += 1;
                self.fail(
                    instance,
                    &v.state,
                    format!("grundy {} (mex of children)", v.expected),
                    format!("stored {}", v.stored),
                )
            }
        }
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        if self.rows.is_empty() {
            writer
                .write_record(["family", "params", "start", "prediction", "oracle", "verdict", "states_visited"])
                .expect("in-memory write");
        }
        for row in &self.rows {
            writer.serialize(row).expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 csv")
    }

    /// Human-readable summary table. Omits timing so output is reproducible.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "suite: {}  ({})", self.suite, self.ranges).unwrap();
        let headers = ["family", "params", "start", "prediction", "oracle", "verdict", "states"];
        let cells: Vec<[String; 7]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.family.clone(),
                    r.params.clone(),
                    r.start.clone(),
                    r.prediction.clone(),
                    r.oracle.clone(),
                    r.verdict.clone(),
                    r.states_visited.to_string(),
                ]
            })
            .collect();
        let mut widths = headers.map(str::len);
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let line = |cols: &[String]| {
            cols.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ")
        };
        writeln!(out, "{}", line(&headers.map(String::from))).unwrap();
        for row in &cells {
            writeln!(out, "{}", line(row).trim_end()).unwrap();
        }
        for f in &self.failures {
            writeln!(out, "FAIL {} at {}: expected {}, observed {}", f.instance, f.state, f.expected, f.observed)
                .unwrap();
        }
        writeln!(
            out,
            "{}: {} instances, {} failures, {} memo states audited",
            if self.passed() { "PASS" } else { "FAIL" },
            self.instances_checked,
            self.failures.len(),
            self.memo_states_audited
        )
        .unwrap();
        out
    }
}

/// A named graph to sweep.
#[derive(Clone, Debug)]
pub struct Instance {
    pub family: String,
    pub params: String,
    pub graph: GameGraph,
}

impl Instance {
    pub fn new(family: impl Into<String>, params: impl Into<String>, graph: GameGraph) -> Self {
        Self { family: family.into(), params: params.into(), graph }
    }

    pub fn id(&self) -> String {
        format!("{}[{}]", self.family, self.params)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StartSpec {
    /// Every vertex.
    All,
    /// The graph's own start vertex.
    Given,
    Vertices(Vec<Vertex>),
}

impl StartSpec {
    pub fn resolve(&self, graph: &GameGraph) -> Vec<Vertex> {
        match self {
            StartSpec::All => (0..graph.vertex_count()).collect(),
            StartSpec::Given => vec![graph.start()],
            StartSpec::Vertices(vs) => vs.clone(),
        }
    }
}

pub(crate) fn oracle_label(winner: Winner) -> &'static str {
    match winner {
        Winner::MoverWins => "MoverWins",
        Winner::OpponentWins => "OpponentWins",
    }
}

fn agrees(prediction: Prediction, winner: Winner) -> bool {
    matches!(
        (prediction, winner),
        (Prediction::P1Wins, Winner::MoverWins) | (Prediction::P2Wins, Winner::OpponentWins)
    )
}

/// For every instance and start, compares the dispatched prediction (when it
/// makes one) with the oracle's winner.
pub fn sweep_predictor_vs_oracle(
    suite: &str,
    instances: &[Instance],
    starts: &StartSpec,
    budget: SolveBudget,
) -> Result<VerificationReport, VerifyError> {
    let began = std::time::Instant::now();
    let mut report = VerificationReport::new(suite, format!("{} instances", instances.len()));
    for inst in instances {
        let mut solver = Solver::new(&inst.graph, budget)?;
        for start in starts.resolve(&inst.graph) {
            let state = inst.graph.fresh_state_at(start);
            let predicted = dispatch(&inst.graph, &state);
            let analysis = solver.solve(&state)?;
            let verdict = if predicted.prediction == Prediction::NoClaim {
                "no-claim"
            } else if agrees(predicted.prediction, analysis.winner) {
                "pass"
            } else {
                report.fail(&inst.id(), &state, predicted.prediction.to_string(), oracle_label(analysis.winner));
                "FAIL"
            };
            report.rows.push(InstanceRow {
                family: inst.family.clone(),
                params: inst.params.clone(),
                start: label(start),
                prediction: predicted.prediction.to_string(),
                oracle: oracle_label(analysis.winner).into(),
                verdict: verdict.into(),
                states_visited: analysis.states_visited,
            });
            report.instances_checked += 1;
        }
        report.audit_solver(&inst.id(), &solver);
    }
    report.elapsed = began.elapsed();
    Ok(report)
}

/// On each even-cycle instance and start: when the mover wins, the oracle's
/// winning moves must be exactly the prescribed ones (lower the edge toward
/// each odd reduced-graph option to the minimum weight); when the mover
/// loses, nothing is prescribed.
pub fn audit_even_cycle_instances(
    suite: &str,
    instances: &[Instance],
    starts: &StartSpec,
    budget: SolveBudget,
) -> Result<VerificationReport, VerifyError> {
    let began = std::time::Instant::now();
    let mut report = VerificationReport::new(suite, format!("{} even-cycle instances", instances.len()));
    for inst in instances {
        let mut solver = Solver::new(&inst.graph, budget)?;
        for start in starts.resolve(&inst.graph) {
            let state = inst.graph.fresh_state_at(start);
            let prescribed = match even_cycle_prescribed_moves(&inst.graph, &state) {
                Ok(moves) => moves,
                Err(e) => {
                    report.fail(&inst.id(), &state, "an even cycle", e.to_string());
                    continue;
                }
            };
            let analysis = solver.solve(&state)?;
            let ok = prescribed == analysis.optimal_moves;
            if !ok {
                report.fail(
                    &inst.id(),
                    &state,
                    format!("winning moves {}", fmt_moves(&prescribed)),
                    format!("oracle winning moves {}", fmt_moves(&analysis.optimal_moves)),
                );
            }
            report.rows.push(InstanceRow {
                family: inst.family.clone(),
                params: inst.params.clone(),
                start: label(start),
                prediction: fmt_moves(&prescribed),
                oracle: fmt_moves(&analysis.optimal_moves),
                verdict: if ok { "pass" } else { "FAIL" }.into(),
                states_visited: analysis.states_visited,
            });
            report.instances_checked += 1;
        }
        report.audit_solver(&inst.id(), &solver);
    }
    report.elapsed = began.elapsed();
    Ok(report)
}

/// Exhaustive uniqueness audit over all `C_len` weightings in `1..=cap`,
/// every start.
pub fn audit_even_cycle_uniqueness(len: usize, cap: u32, budget: SolveBudget) -> Result<VerificationReport, VerifyError> {
    let instances: Vec<Instance> = crate::suites::all_weightings(crate::Family::Cycle { n: len }, cap)?;
    let mut report = audit_even_cycle_instances("even-cycle-uniqueness", &instances, &StartSpec::All, budget)?;
    report.ranges = format!("C{len}, weights 1..={cap}, all starts");
    Ok(report)
}

/// Oracle check that the mover wins `K_n` from every start under sampled
/// (or, with `samples = None`, all) weightings in `1..=cap`.
pub fn check_complete_arbitrary_weights(
    n: usize,
    cap: u32,
    samples: Option<usize>,
    seed: u64,
    budget: SolveBudget,
) -> Result<VerificationReport, VerifyError> {
    let began = std::time::Instant::now();
    let family = crate::Family::Complete { n };
    let instances = match samples {
        None => crate::suites::all_weightings(family, cap)?,
        Some(count) => crate::suites::sampled_weightings(family, cap, count, seed),
    };
    let mut report = VerificationReport::new(
        "complete-weights",
        match samples {
            None => format!("K{n}, all weightings in 1..={cap}, all starts"),
            Some(c) => format!("K{n}, {c} sampled weightings in 1..={cap} (seed {seed}), all starts"),
        },
    );
    for inst in &instances {
        let mut solver = Solver::new(&inst.graph, budget)?;
        for start in 0..n {
            let state = inst.graph.fresh_state_at(start);
            let analysis = solver.solve(&state)?;
            let ok = analysis.winner == Winner::MoverWins;
            if !ok {
                report.fail(&inst.id(), &state, "MoverWins", oracle_label(analysis.winner));
            }
            report.rows.push(InstanceRow {
                family: inst.family.clone(),
                params: inst.params.clone(),
                start: label(start),
                prediction: "-".into(),
                oracle: oracle_label(analysis.winner).into(),
                verdict: if ok { "pass" } else { "FAIL" }.into(),
                states_visited: analysis.states_visited,
            });
            report.instances_checked += 1;
        }
        report.audit_solver(&inst.id(), &solver);
    }
    report.elapsed = began.elapsed();
    Ok(report)
}

pub(crate) fn fmt_moves(moves: &[crate::Move]) -> String {
    if moves.is_empty() {
        return "none".into();
    }
    moves.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
