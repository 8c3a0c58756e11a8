//! Closed-form predictors and move choosers for paths, cycles, `K_{2,j}`,
//! `SSB_j` and graphs with a mutually adjacent pair.
//!
//! Predictions are from the point of view of the player to move: `P1Wins`
//! means the mover wins. Strategies never consult the oracle; when a rule
//! does not apply they say so.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GameGraph, GameState, Move, Vertex};
use crate::structures::{detect, PositiveView, StructureTag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Prediction {
    P1Wins,
    P2Wins,
    NoClaim,
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Prediction::P1Wins => "P1Wins",
            Prediction::P2Wins => "P2Wins",
            Prediction::NoClaim => "NoClaim",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub prediction: Prediction,
    /// The winning move when the mover is predicted to win.
    pub chosen: Option<Move>,
}

impl Outcome {
    fn mover_wins(mv: Move) -> Self {
        Self { prediction: Prediction::P1Wins, chosen: Some(mv) }
    }

    fn mover_loses() -> Self {
        Self { prediction: Prediction::P2Wins, chosen: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("the token's component is not a path and has no odd path option")]
    NotAPath,
    #[error("the token's component is not an odd cycle")]
    NotAnOddCycle,
    #[error("the token's component is neither an even cycle nor a path")]
    NotAnEvenCycle,
    #[error("required structure missing: {0}")]
    StructureMissing(&'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StrategyKind {
    Ssb,
    K2j,
    EvenCycle,
    OddCycle,
    Path,
}

impl StrategyKind {
    pub fn name(&self) -> &'static str {
        match self {
            StrategyKind::Ssb => "ssb_strategy",
            StrategyKind::K2j => "k2j_strategy",
            StrategyKind::EvenCycle => "even_cycle_strategy",
            StrategyKind::OddCycle => "odd_cycle_strategy",
            StrategyKind::Path => "path_strategy",
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Paths: take all weight off the first edge of an odd path option; with
/// only even options the mover loses.
///
/// Also applies outside path components whenever an odd pendant path hangs
/// off the token, since zeroing its first edge strands the opponent at the
/// end of an even path.
pub fn path_strategy(graph: &GameGraph, state: &GameState) -> Result<Outcome, StrategyError> {
    let view = PositiveView::of_state(graph, state);
    if let Some((toward, _)) = view.odd_path_option() {
        return Ok(Outcome::mover_wins(Move::new(toward, 0)));
    }
    if view.component_is_path() {
        return Ok(Outcome::mover_loses());
    }
    Err(StrategyError::NotAPath)
}

/// Odd cycles: break the cycle by zeroing an incident edge (lower neighbor
/// first), leaving the opponent at the end of an even path.
pub fn odd_cycle_strategy(graph: &GameGraph, state: &GameState) -> Result<Outcome, StrategyError> {
    let view = PositiveView::of_state(graph, state);
    match view.component_cycle_length() {
        Some(len) if len % 2 == 1 => Ok(Outcome::mover_wins(Move::new(view.neighbors(state.token)[0], 0))),
        _ => Err(StrategyError::NotAnOddCycle),
    }
}

/// An even cycle with its minimum weight `m` subtracted from every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedGraph {
    pub m: u32,
    /// Per-edge weight minus `m` on the token's component; other edges are
    /// copied unchanged and zero edges stay zero.
    pub reduced_weights: Vec<u32>,
}

impl ReducedGraph {
    /// `None` when the token has no positive-weight component edges.
    pub fn new(graph: &GameGraph, state: &GameState) -> Option<Self> {
        let view = PositiveView::of_state(graph, state);
        let m = view.component_edges().iter().map(|&e| state.weights[e]).min()?;
        let mut reduced_weights = state.weights.clone();
        for &e in view.component_edges() {
            reduced_weights[e] -= m;
        }
        Some(Self { m, reduced_weights })
    }

    /// Options of the token that begin an odd path in the reduced graph.
    pub fn odd_options(&self, graph: &GameGraph, token: Vertex) -> Vec<Vertex> {
        PositiveView::new(graph, &self.reduced_weights, token)
            .pendant_paths(token)
            .into_iter()
            .filter(|&(_, len)| len % 2 == 1)
            .map(|(v, _)| v)
            .collect()
    }
}

/// Moves prescribed on an even cycle: lower the edge toward each odd option
/// of the reduced graph to exactly `m`. Empty when the mover loses.
pub fn even_cycle_prescribed_moves(graph: &GameGraph, state: &GameState) -> Result<Vec<Move>, StrategyError> {
    let view = PositiveView::of_state(graph, state);
    match view.component_cycle_length() {
        Some(len) if len % 2 == 0 => {}
        _ => return Err(StrategyError::NotAnEvenCycle),
    }
    let reduced = ReducedGraph::new(graph, state).expect("a cycle has positive edges");
    Ok(reduced.odd_options(graph, state.token).into_iter().map(|to| Move::new(to, reduced.m)).collect())
}

/// Even cycles: the mover wins iff an odd path leaves the token once the
/// minimum weight is subtracted everywhere, and then lowers that edge to the
/// minimum. `m` is recomputed from the current weights on every call. A
/// cycle already broken into a path is handed to [`path_strategy`].
pub fn even_cycle_strategy(graph: &GameGraph, state: &GameState) -> Result<Outcome, StrategyError> {
    let view = PositiveView::of_state(graph, state);
    if view.component_cycle_length().is_none() && view.component_is_path() {
        return path_strategy(graph, state);
    }
    let moves = even_cycle_prescribed_moves(graph, state)?;
    Ok(match moves.first() {
        Some(&mv) => Outcome::mover_wins(mv),
        None => Outcome::mover_loses(),
    })
}

/// Hub pair `(hub, other_hub)` for `K_{2,j}`-like positions, if present.
pub fn k2j_hubs(graph: &GameGraph, state: &GameState) -> Option<(Vertex, Vertex)> {
    detect(graph, state).into_iter().find_map(|t| match t {
        StructureTag::K2jHubStart { hub, other_hub, .. } => Some((hub, other_hub)),
        _ => None,
    })
}

/// `K_{2,j}` with unit weights and the token on a hub: the mover loses.
/// The defender's replies come from [`hub_reply`].
pub fn k2j_strategy(graph: &GameGraph, state: &GameState) -> Result<Outcome, StrategyError> {
    k2j_hubs(graph, state)
        .map(|_| Outcome::mover_loses())
        .ok_or(StrategyError::StructureMissing("K2jHubStart"))
}

/// Mutually adjacent pair `(token, partner)` usable by the SSB strategy:
/// unit weights on the token's component and the lowest-numbered partner.
pub fn ssb_hubs(graph: &GameGraph, state: &GameState) -> Option<(Vertex, Vertex)> {
    let view = PositiveView::of_state(graph, state);
    if !view.component_is_unit() {
        return None;
    }
    view.mutual_partners(state.token).first().map(|&(b, _)| (state.token, b))
}

/// Unit weights and the token on one of two mutually adjacent vertices: the
/// mover wins by removing the hub-hub edge first.
pub fn ssb_strategy(graph: &GameGraph, state: &GameState) -> Result<Outcome, StrategyError> {
    let (a, b) = ssb_hubs(graph, state).ok_or(StrategyError::StructureMissing("MutuallyAdjacentPair"))?;
    Ok(Outcome::mover_wins(hub_reply(graph, state, (a, b)).expect("hub edge is positive")))
}

/// The SSB move rule anchored on a hub pair: from a hub with the hub-hub
/// edge still present, cross it; otherwise go to whichever hub is reachable,
/// hub `a` first. Every traversed edge is zeroed. This is also the `K_{2,j}`
/// defender's reply, where the hub-hub edge does not exist.
pub fn hub_reply(graph: &GameGraph, state: &GameState, (a, b): (Vertex, Vertex)) -> Option<Move> {
    let live = |u: Vertex, v: Vertex| graph.edge_between(u, v).is_some_and(|e| state.weights[e] > 0);
    let t = state.token;
    if (t == a || t == b) && live(a, b) {
        return Some(Move::new(if t == a { b } else { a }, 0));
    }
    [a, b].into_iter().find(|&h| h != t && live(t, h)).map(|h| Move::new(h, 0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dispatch {
    pub strategy: Option<StrategyKind>,
    pub prediction: Prediction,
    pub chosen: Option<Move>,
}

type StrategyFn = fn(&GameGraph, &GameState) -> Result<Outcome, StrategyError>;

/// Runs the most specific applicable strategy, in priority order
/// ssb, k2j, even cycle, odd cycle, path.
pub fn dispatch(graph: &GameGraph, state: &GameState) -> Dispatch {
    let tags = detect(graph, state);
    let has = |pred: fn(&StructureTag) -> bool| tags.iter().any(pred);
    let attempts: [(StrategyKind, bool, StrategyFn); 5] = [
        (StrategyKind::Ssb, has(|t| matches!(t, StructureTag::MutuallyAdjacentPair { .. })), ssb_strategy),
        (StrategyKind::K2j, has(|t| matches!(t, StructureTag::K2jHubStart { .. })), k2j_strategy),
        (StrategyKind::EvenCycle, has(|t| matches!(t, StructureTag::EvenCycle { .. })), even_cycle_strategy),
        (StrategyKind::OddCycle, has(|t| matches!(t, StructureTag::OddCycle { .. })), odd_cycle_strategy),
        (
            StrategyKind::Path,
            has(|t| matches!(t, StructureTag::OddPathOption { .. } | StructureTag::AllEvenPathOptions)),
            path_strategy,
        ),
    ];
    for (kind, applicable, run) in attempts {
        if !applicable {
            continue;
        }
        if let Ok(outcome) = run(graph, state) {
            return Dispatch { strategy: Some(kind), prediction: outcome.prediction, chosen: outcome.chosen };
        }
    }
    Dispatch { strategy: None, prediction: Prediction::NoClaim, chosen: None }
}

/// A player that picks moves for the side claiming a win.
pub trait Player {
    fn name(&self) -> String;

    /// The move to play, or `None` when the player has no claim here.
    fn choose(&self, graph: &GameGraph, state: &GameState) -> Option<Move>;
}

/// The strategies packaged as players. Cycle players fall back to the path
/// rule once the cycle is broken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrategyPlayer {
    Path,
    OddCycle,
    EvenCycle,
    /// SSB strategy / `K_{2,j}` defender anchored on a hub pair.
    Hubs(Vertex, Vertex),
    Dispatch,
}

impl Player for StrategyPlayer {
    fn name(&self) -> String {
        match self {
            StrategyPlayer::Path => "path_strategy".into(),
            StrategyPlayer::OddCycle => "odd_cycle_strategy".into(),
            StrategyPlayer::EvenCycle => "even_cycle_strategy".into(),
            StrategyPlayer::Hubs(a, b) => {
                format!("hub_strategy({},{})", crate::graph::label(*a), crate::graph::label(*b))
            }
            StrategyPlayer::Dispatch => "dispatch".into(),
        }
    }

    fn choose(&self, graph: &GameGraph, state: &GameState) -> Option<Move> {
        match *self {
            StrategyPlayer::Path => path_strategy(graph, state).ok()?.chosen,
            StrategyPlayer::OddCycle => odd_cycle_strategy(graph, state)
                .or_else(|_| path_strategy(graph, state))
                .ok()?
                .chosen,
            StrategyPlayer::EvenCycle => even_cycle_strategy(graph, state).ok()?.chosen,
            StrategyPlayer::Hubs(a, b) => hub_reply(graph, state, (a, b)),
            StrategyPlayer::Dispatch => dispatch(graph, state).chosen,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, unit, Family, WeightSpec};
    use crate::solver::{solve, SolveBudget, Winner};

    fn cycle(weights: &[u32]) -> GameGraph {
        generate(Family::Cycle { n: weights.len() }, &WeightSpec::Explicit { weights: weights.to_vec() }).unwrap()
    }

    #[test]
    fn odd_unit_path_from_an_end() {
        let g = unit(Family::Path { n: 6 }).unwrap();
        assert_eq!(path_strategy(&g, &g.fresh_state()).unwrap(), Outcome::mover_wins(Move::new(1, 0)));
    }

    #[test]
    fn even_unit_path_from_an_end() {
        for n in [3, 5, 7, 9] {
            let g = unit(Family::Path { n }).unwrap();
            assert_eq!(path_strategy(&g, &g.fresh_state()).unwrap().prediction, Prediction::P2Wins);
        }
    }

    #[test]
    fn even_path_from_a_vertex_with_two_odd_sides() {
        let g = unit(Family::Path { n: 5 }).unwrap();
        let out = path_strategy(&g, &g.fresh_state_at(1)).unwrap();
        assert_eq!(out, Outcome::mover_wins(Move::new(0, 0)));
        assert_eq!(path_strategy(&g, &g.fresh_state_at(2)).unwrap().prediction, Prediction::P2Wins);
    }

    #[test]
    fn path_strategy_rejects_cycles() {
        let g = unit(Family::Cycle { n: 4 }).unwrap();
        assert_eq!(path_strategy(&g, &g.fresh_state()), Err(StrategyError::NotAPath));
    }

    #[test]
    fn odd_cycles() {
        let g = unit(Family::Cycle { n: 3 }).unwrap();
        assert_eq!(odd_cycle_strategy(&g, &g.fresh_state()).unwrap().prediction, Prediction::P1Wins);

        let g = cycle(&[2, 3, 1, 4, 2]);
        let out = odd_cycle_strategy(&g, &g.fresh_state()).unwrap();
        assert_eq!(out, Outcome::mover_wins(Move::new(1, 0)));
        let child = g.apply_move(&g.fresh_state(), out.chosen.unwrap()).unwrap();
        assert_eq!(solve(&g, &child, SolveBudget::default()).unwrap().winner, Winner::OpponentWins);

        assert_eq!(odd_cycle_strategy(&g, &child), Err(StrategyError::NotAnOddCycle));
        let even = unit(Family::Cycle { n: 4 }).unwrap();
        assert_eq!(odd_cycle_strategy(&even, &even.fresh_state()), Err(StrategyError::NotAnOddCycle));
    }

    #[test]
    fn even_cycle_worked_example() {
        let g = cycle(&[6, 5, 6, 2, 4, 5]);
        let reduced = ReducedGraph::new(&g, &g.fresh_state()).unwrap();
        assert_eq!(reduced.m, 2);
        assert_eq!(reduced.reduced_weights, vec![4, 3, 4, 0, 2, 3]);
        assert_eq!(reduced.odd_options(&g, 0), vec![1]);
        assert_eq!(even_cycle_strategy(&g, &g.fresh_state()).unwrap(), Outcome::mover_wins(Move::new(1, 2)));
    }

    #[test]
    fn even_cycle_with_isolated_token_after_reduction() {
        // right-hand C4 of the two-cycle example
        let g = cycle(&[2, 4, 3, 2]);
        let reduced = ReducedGraph::new(&g, &g.fresh_state()).unwrap();
        assert_eq!(reduced.m, 2);
        assert!(reduced.odd_options(&g, 0).is_empty());
        assert_eq!(even_cycle_strategy(&g, &g.fresh_state()).unwrap().prediction, Prediction::P2Wins);
    }

    #[test]
    fn uniform_even_cycles_lose_for_the_mover() {
        for k in 1..=4 {
            for n in [4, 6, 8] {
                let g = generate(Family::Cycle { n }, &WeightSpec::Uniform { k }).unwrap();
                assert_eq!(even_cycle_strategy(&g, &g.fresh_state()).unwrap().prediction, Prediction::P2Wins);
            }
        }
        let odd = unit(Family::Cycle { n: 5 }).unwrap();
        assert_eq!(even_cycle_strategy(&odd, &odd.fresh_state()), Err(StrategyError::NotAnEvenCycle));
    }

    #[test]
    fn k2j_predictions() {
        for j in [1, 2, 6] {
            let g = unit(Family::CompleteBipartite { j }).unwrap();
            assert_eq!(k2j_strategy(&g, &g.fresh_state()).unwrap().prediction, Prediction::P2Wins);
        }
        let g = unit(Family::Ssb { j: 3 }).unwrap();
        assert!(k2j_strategy(&g, &g.fresh_state()).is_err());
    }

    #[test]
    fn k2j_defender_returns_to_the_other_hub() {
        let g = unit(Family::CompleteBipartite { j: 4 }).unwrap();
        let s = g.apply_move(&g.fresh_state(), Move::new(3, 0)).unwrap();
        assert_eq!(hub_reply(&g, &s, (0, 1)), Some(Move::new(1, 0)));
    }

    #[test]
    fn ssb_first_move_removes_the_hub_edge() {
        let g = unit(Family::Complete { n: 3 }).unwrap();
        for v in 0..3 {
            let out = ssb_strategy(&g, &g.fresh_state_at(v)).unwrap();
            assert_eq!(out.prediction, Prediction::P1Wins);
            let mv = out.chosen.unwrap();
            assert_eq!(mv.new_weight, 0);
            assert_ne!(mv.to, v);
        }
        for n in 2..=7 {
            let g = unit(Family::Complete { n }).unwrap();
            assert_eq!(ssb_strategy(&g, &g.fresh_state()).unwrap(), Outcome::mover_wins(Move::new(1, 0)));
        }
        let heavy = generate(Family::Complete { n: 4 }, &WeightSpec::Uniform { k: 2 }).unwrap();
        assert!(ssb_strategy(&heavy, &heavy.fresh_state()).is_err());
    }

    #[test]
    fn hub_rule_from_a_common_neighbor_prefers_hub_a() {
        let g = unit(Family::Ssb { j: 2 }).unwrap();
        let s = g.fresh_state_at(2);
        assert_eq!(hub_reply(&g, &s, (0, 1)), Some(Move::new(0, 0)));
        let mut cut = s.clone();
        cut.weights[g.edge_between(0, 2).unwrap()] = 0;
        assert_eq!(hub_reply(&g, &cut, (0, 1)), Some(Move::new(1, 0)));
    }

    #[test]
    fn dispatch_priorities() {
        let k5 = unit(Family::Complete { n: 5 }).unwrap();
        assert_eq!(dispatch(&k5, &k5.fresh_state()).strategy, Some(StrategyKind::Ssb));

        let c6 = generate(Family::Cycle { n: 6 }, &WeightSpec::Random { cap: 5, seed: 2 }).unwrap();
        assert_eq!(dispatch(&c6, &c6.fresh_state()).strategy, Some(StrategyKind::EvenCycle));

        let star = GameGraph::from_triples(4, &[(0, 1, 1), (0, 2, 1), (0, 3, 1)], 0).unwrap();
        let d = dispatch(&star, &star.fresh_state());
        assert_eq!((d.strategy, d.prediction), (Some(StrategyKind::Path), Prediction::P1Wins));

        let k23 = unit(Family::CompleteBipartite { j: 3 }).unwrap();
        assert_eq!(dispatch(&k23, &k23.fresh_state()).strategy, Some(StrategyKind::K2j));

        let c5 = cycle(&[2, 3, 1, 4, 2]);
        assert_eq!(dispatch(&c5, &c5.fresh_state()).strategy, Some(StrategyKind::OddCycle));

        // weighted K4 has no applicable rule
        let k4 = generate(Family::Complete { n: 4 }, &WeightSpec::Uniform { k: 2 }).unwrap();
        let d = dispatch(&k4, &k4.fresh_state());
        assert_eq!((d.strategy, d.prediction, d.chosen), (None, Prediction::NoClaim, None));
    }
}
