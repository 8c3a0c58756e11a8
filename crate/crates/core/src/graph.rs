//! Game model: weighted graphs, positions, moves.
//!
//! Vertex ids are 0-based. Human-facing text renders them with the 1-based
//! `v<i>` labels used in the literature, see [`label`].

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

/// Renders a 0-based vertex id as its 1-based `v<i>` label.
pub fn label(v: Vertex) -> String {
    format!("v{}", v + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    /// Initial weight, always at least 1.
    pub w: u32,
}

impl Edge {
    pub fn other(&self, x: Vertex) -> Vertex {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("edge {index} is a loop on vertex {vertex}")]
    Loop { index: usize, vertex: Vertex },
    #[error("edge {index} duplicates edge {first} ({u}, {v})")]
    DuplicateEdge { index: usize, first: usize, u: Vertex, v: Vertex },
    #[error("edge {index} has initial weight 0")]
    ZeroWeight { index: usize },
    #[error("vertex {vertex} is out of range for {vertex_count} vertices")]
    VertexOutOfRange { vertex: Vertex, vertex_count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("state has {got} weights but the graph has {expected} edges")]
    WeightCount { expected: usize, got: usize },
    #[error("weight {weight} on edge {index} exceeds its initial weight {initial}")]
    WeightTooLarge { index: usize, weight: u32, initial: u32 },
    #[error("token vertex {0} is out of range")]
    TokenOutOfRange(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("no edge between {} and {}", label(*.from), label(*.to))]
    NoEdge { from: Vertex, to: Vertex },
    #[error("edge between {} and {} has weight 0", label(*.from), label(*.to))]
    DeadEdge { from: Vertex, to: Vertex },
    #[error("new weight {new_weight} must be below the current weight {current}")]
    NotDecreasing { current: u32, new_weight: u32 },
}

/// A simple undirected graph with positive initial edge weights and a start
/// vertex for the token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    start: Vertex,
    // (neighbor, edge index), sorted by neighbor
    adjacency: Vec<Vec<(Vertex, usize)>>,
}

impl GameGraph {
    pub fn new(vertex_count: usize, edges: Vec<Edge>, start: Vertex) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::NoVertices);
        }
        if start >= vertex_count {
            return Err(GraphError::VertexOutOfRange { vertex: start, vertex_count });
        }
        let mut adjacency: Vec<Vec<(Vertex, usize)>> = vec![Vec::new(); vertex_count];
        for (index, e) in edges.iter().enumerate() {
            for vertex in [e.u, e.v] {
                if vertex >= vertex_count {
                    return Err(GraphError::VertexOutOfRange { vertex, vertex_count });
                }
            }
            if e.u == e.v {
                return Err(GraphError::Loop { index, vertex: e.u });
            }
            if e.w == 0 {
                return Err(GraphError::ZeroWeight { index });
            }
            if let Some(&(_, first)) = adjacency[e.u].iter().find(|&&(n, _)| n == e.v) {
                return Err(GraphError::DuplicateEdge { index, first, u: e.u, v: e.v });
            }
            adjacency[e.u].push((e.v, index));
            adjacency[e.v].push((e.u, index));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self { vertex_count, edges, start, adjacency })
    }

    /// Builds a graph from `(u, v, w)` triples.
    pub fn from_triples(
        vertex_count: usize,
        triples: &[(Vertex, Vertex, u32)],
        start: Vertex,
    ) -> Result<Self, GraphError> {
        let edges = triples.iter().map(|&(u, v, w)| Edge { u, v, w }).collect();
        Self::new(vertex_count, edges, start)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn start(&self) -> Vertex {
        self.start
    }

    /// Same structure and weights, different start vertex.
    pub fn with_start(&self, start: Vertex) -> Result<Self, GraphError> {
        if start >= self.vertex_count {
            return Err(GraphError::VertexOutOfRange { vertex: start, vertex_count: self.vertex_count });
        }
        Ok(Self { start, ..self.clone() })
    }

    /// Incident `(neighbor, edge index)` pairs in ascending neighbor order.
    pub fn incident(&self, v: Vertex) -> &[(Vertex, usize)] {
        &self.adjacency[v]
    }

    pub fn edge_between(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.adjacency
            .get(u)?
            .binary_search_by_key(&v, |&(n, _)| n)
            .ok()
            .map(|i| self.adjacency[u][i].1)
    }

    pub fn total_initial_weight(&self) -> u64 {
        self.edges.iter().map(|e| u64::from(e.w)).sum()
    }

    pub fn fresh_state(&self) -> GameState {
        GameState { weights: self.edges.iter().map(|e| e.w).collect(), token: self.start }
    }

    /// Fresh weights with the token placed on `token`.
    pub fn fresh_state_at(&self, token: Vertex) -> GameState {
        GameState { weights: self.edges.iter().map(|e| e.w).collect(), token }
    }

    /// All legal moves, ordered by ascending target vertex then ascending
    /// new weight.
    pub fn legal_moves(&self, state: &GameState) -> Vec<Move> {
        let mut moves = Vec::new();
        for &(to, e) in &self.adjacency[state.token] {
            let w = state.weights[e];
            moves.extend((0..w).map(|new_weight| Move { to, new_weight }));
        }
        moves
    }

    pub fn is_terminal(&self, state: &GameState) -> bool {
        self.adjacency[state.token].iter().all(|&(_, e)| state.weights[e] == 0)
    }

    pub fn apply_move(&self, state: &GameState, mv: Move) -> Result<GameState, MoveError> {
        let from = state.token;
        let e = self.edge_between(from, mv.to).ok_or(MoveError::NoEdge { from, to: mv.to })?;
        let current = state.weights[e];
        if current == 0 {
            return Err(MoveError::DeadEdge { from, to: mv.to });
        }
        if mv.new_weight >= current {
            return Err(MoveError::NotDecreasing { current, new_weight: mv.new_weight });
        }
        let mut weights = state.weights.clone();
        weights[e] = mv.new_weight;
        Ok(GameState { weights, token: mv.to })
    }

    /// Validates a state against this graph.
    pub fn check_state(&self, state: &GameState) -> Result<(), StateError> {
        if state.weights.len() != self.edges.len() {
            return Err(StateError::WeightCount { expected: self.edges.len(), got: state.weights.len() });
        }
        if state.token >= self.vertex_count {
            return Err(StateError::TokenOutOfRange(state.token));
        }
        for (index, (&weight, e)) in state.weights.iter().zip(&self.edges).enumerate() {
            if weight > e.w {
                return Err(StateError::WeightTooLarge { index, weight, initial: e.w });
            }
        }
        Ok(())
    }
}

/// Current edge weights (index-aligned with [`GameGraph::edges`]) and the
/// token vertex. Weight-0 edges stay in the vector and are simply unplayable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GameState {
    pub weights: Vec<u32>,
    pub token: Vertex,
}

impl GameState {
    pub fn new(graph: &GameGraph, weights: Vec<u32>, token: Vertex) -> Result<Self, StateError> {
        let state = Self { weights, token };
        graph.check_state(&state)?;
        Ok(state)
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().map(|&w| u64::from(w)).sum()
    }
}

impl fmt::Display for GameState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "token={} weights=[", label(self.token))?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("]")
    }
}

/// Move the token to `to` and set the traversed edge to `new_weight`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub to: Vertex,
    pub new_weight: u32,
}

impl Move {
    pub fn new(to: Vertex, new_weight: u32) -> Self {
        Self { to, new_weight }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", label(self.to), self.new_weight)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn left_c4() -> GameGraph {
        GameGraph::from_triples(4, &[(0, 1, 3), (1, 2, 2), (2, 3, 4), (3, 0, 4)], 0).unwrap()
    }

    #[test]
    fn move_count_is_sum_of_incident_weights() {
        let g = left_c4();
        let moves = g.legal_moves(&g.fresh_state());
        assert_eq!(moves.len(), 7);
        assert_eq!(moves.iter().filter(|m| m.to == 1).count(), 3);
        assert_eq!(moves.iter().filter(|m| m.to == 3).count(), 4);
        let mut sorted = moves.clone();
        sorted.sort();
        assert_eq!(sorted, moves);
    }

    #[test]
    fn single_unit_edge_has_one_move() {
        let g = GameGraph::from_triples(2, &[(0, 1, 1)], 0).unwrap();
        assert_eq!(g.legal_moves(&g.fresh_state()), vec![Move::new(1, 0)]);
    }

    #[test]
    fn terminal_positions() {
        let isolated = GameGraph::from_triples(3, &[(1, 2, 1)], 0).unwrap();
        assert!(isolated.is_terminal(&isolated.fresh_state()));
        assert!(isolated.legal_moves(&isolated.fresh_state()).is_empty());

        let g = left_c4();
        assert!(!g.is_terminal(&g.fresh_state()));
        let drained = GameState { weights: vec![0, 2, 4, 0], token: 0 };
        assert!(g.is_terminal(&drained));
    }

    #[test]
    fn apply_move_on_path() {
        let g = GameGraph::from_triples(3, &[(0, 1, 1), (1, 2, 1)], 0).unwrap();
        let next = g.apply_move(&g.fresh_state(), Move::new(1, 0)).unwrap();
        assert_eq!(next, GameState { weights: vec![0, 1], token: 1 });
    }

    #[test]
    fn illegal_moves_are_rejected() {
        let g = GameGraph::from_triples(3, &[(0, 1, 2), (1, 2, 1)], 0).unwrap();
        let s = g.fresh_state();
        assert_eq!(
            g.apply_move(&s, Move::new(1, 2)),
            Err(MoveError::NotDecreasing { current: 2, new_weight: 2 })
        );
        assert_eq!(g.apply_move(&s, Move::new(2, 0)), Err(MoveError::NoEdge { from: 0, to: 2 }));
        let dead = GameState { weights: vec![0, 1], token: 0 };
        assert_eq!(g.apply_move(&dead, Move::new(1, 0)), Err(MoveError::DeadEdge { from: 0, to: 1 }));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            GameGraph::from_triples(2, &[(0, 0, 1)], 0),
            Err(GraphError::Loop { index: 0, vertex: 0 })
        );
        assert_eq!(
            GameGraph::from_triples(2, &[(0, 1, 1), (1, 0, 2)], 0),
            Err(GraphError::DuplicateEdge { index: 1, first: 0, u: 1, v: 0 })
        );
        assert_eq!(GameGraph::from_triples(2, &[(0, 1, 0)], 0), Err(GraphError::ZeroWeight { index: 0 }));
        assert!(matches!(
            GameGraph::from_triples(2, &[(0, 2, 1)], 0),
            Err(GraphError::VertexOutOfRange { vertex: 2, .. })
        ));
        assert!(matches!(GameGraph::from_triples(2, &[], 5), Err(GraphError::VertexOutOfRange { .. })));
        assert_eq!(GameGraph::new(0, vec![], 0), Err(GraphError::NoVertices));
    }

    #[test]
    fn state_validation() {
        let g = left_c4();
        assert!(GameState::new(&g, vec![3, 2, 4, 4], 2).is_ok());
        assert!(matches!(GameState::new(&g, vec![3, 2], 0), Err(StateError::WeightCount { .. })));
        assert!(matches!(GameState::new(&g, vec![4, 2, 4, 4], 0), Err(StateError::WeightTooLarge { .. })));
        assert_eq!(GameState::new(&g, vec![3, 2, 4, 4], 9), Err(StateError::TokenOutOfRange(9)));
    }
}
