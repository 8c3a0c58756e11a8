//! Exhaustive Sprague-Grundy oracle.
//!
//! Every state is keyed by a mixed-radix encoding of its weight vector and
//! token. Small state spaces get a dense byte table, larger ones a hash map.
//! The search is an explicit-stack DFS, so deep games do not grow the call
//! stack.

use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GameGraph, GameState, Move, StateError, Vertex};

/// Default cap on memoized states.
pub const DEFAULT_MAX_STATES: u64 = 1 << 25;

const DENSE_LIMIT: u128 = 1 << 26;
// dense cells store grundy + 1 in a byte, 0 meaning unknown
const DENSE_MAX_MOVES: u64 = 254;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveBudget {
    pub max_states: u64,
}

impl Default for SolveBudget {
    fn default() -> Self {
        Self { max_states: DEFAULT_MAX_STATES }
    }
}

impl SolveBudget {
    pub fn new(max_states: u64) -> Self {
        Self { max_states: max_states.max(1) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Winner {
    /// p-position: the player to move wins.
    MoverWins,
    /// 0-position: the player to move loses.
    OpponentWins,
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::MoverWins => "mover (p-position)",
            Winner::OpponentWins => "opponent (0-position)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub winner: Winner,
    pub grundy: u32,
    /// Moves to a grundy-0 child, in legal-move order.
    pub optimal_moves: Vec<Move>,
    /// States newly expanded while answering this query.
    pub states_visited: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("search budget of {max_states} states exceeded after visiting {states_visited} states")]
    BudgetExceeded { max_states: u64, states_visited: u64 },
    #[error("state space of this graph does not fit a 128-bit key")]
    StateSpaceTooLarge,
    #[error(transparent)]
    InvalidState(#[from] StateError),
}

/// Mixed-radix codec: `key = code * vertex_count + token` with
/// `code = sum(weight[e] * stride[e])` and `stride[e]` the product of
/// `initial_weight + 1` over the preceding edges.
#[derive(Clone, Debug)]
pub(crate) struct StateCodec {
    strides: Vec<u128>,
    radices: Vec<u128>,
    vertices: u128,
    space: u128,
}

impl StateCodec {
    pub(crate) fn new(graph: &GameGraph) -> Option<Self> {
        let mut strides = Vec::with_capacity(graph.edges().len());
        let mut radices = Vec::with_capacity(graph.edges().len());
        let mut product: u128 = 1;
        for e in graph.edges() {
            let radix = u128::from(e.w) + 1;
            strides.push(product);
            radices.push(radix);
            product = product.checked_mul(radix)?;
        }
        let vertices = graph.vertex_count() as u128;
        let space = product.checked_mul(vertices)?;
        Some(Self { strides, radices, vertices, space })
    }

    pub(crate) fn code(&self, weights: &[u32]) -> u128 {
        weights.iter().zip(&self.strides).map(|(&w, &s)| u128::from(w) * s).sum()
    }

    pub(crate) fn key(&self, code: u128, token: Vertex) -> u128 {
        code * self.vertices + token as u128
    }

    pub(crate) fn encode(&self, state: &GameState) -> u128 {
        self.key(self.code(&state.weights), state.token)
    }

    pub(crate) fn stride(&self, edge: usize) -> u128 {
        self.strides[edge]
    }

    pub(crate) fn decode(&self, key: u128) -> GameState {
        let token = (key % self.vertices) as Vertex;
        let mut code = key / self.vertices;
        let weights = self
            .radices
            .iter()
            .map(|&r| {
                let w = (code % r) as u32;
                code /= r;
                w
            })
            .collect();
        GameState { weights, token }
    }
}

enum Memo {
    Dense(Vec<u8>),
    Sparse(FxHashMap<u128, u32>),
}

impl Memo {
    #[inline]
    fn get(&self, key: u128) -> Option<u32> {
        match self {
            Memo::Dense(table) => match table[key as usize] {
                0 => None,
                g => Some(u32::from(g) - 1),
            },
            Memo::Sparse(map) => map.get(&key).copied(),
        }
    }

    #[inline]
    fn insert(&mut self, key: u128, grundy: u32) {
        match self {
            Memo::Dense(table) => table[key as usize] = (grundy + 1) as u8,
            Memo::Sparse(map) => {
                map.insert(key, grundy);
            }
        }
    }

    fn entries(&self) -> Box<dyn Iterator<Item = (u128, u32)> + '_> {
        match self {
            Memo::Dense(table) => Box::new(
                table.iter().enumerate().filter(|(_, &g)| g != 0).map(|(k, &g)| (k as u128, u32::from(g) - 1)),
            ),
            Memo::Sparse(map) => Box::new(map.iter().map(|(&k, &g)| (k, g))),
        }
    }
}

/// Set of child grundy values seen so far.
#[derive(Default)]
struct Seen {
    low: u128,
    high: Vec<u32>,
}

impl Seen {
    #[inline]
    fn insert(&mut self, g: u32) {
        if g < 128 {
            self.low |= 1 << g;
        } else {
            self.high.push(g);
        }
    }

    fn mex(&mut self) -> u32 {
        let low = self.low.trailing_ones();
        if low < 128 {
            return low;
        }
        self.high.sort_unstable();
        self.high.dedup();
        let mut m = 128;
        for &g in &self.high {
            if g == m {
                m += 1;
            } else if g > m {
                break;
            }
        }
        m
    }
}

struct Frame {
    code: u128,
    token: Vertex,
    // index into the token's incidence list and the next new weight to try
    adj: usize,
    next_weight: u32,
    // edge weight to restore on pop
    restore: Option<(usize, u32)>,
    seen: Seen,
}

/// Memoized solver bound to one graph. Reuse it for many states of the same
/// graph to share the table.
pub struct Solver<'g> {
    graph: &'g GameGraph,
    codec: StateCodec,
    memo: Memo,
    budget: SolveBudget,
    stored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("memo entry {state} stores grundy {stored} but its children give mex {expected}")]
pub struct AuditViolation {
    pub state: GameState,
    pub stored: u32,
    pub expected: u32,
}

impl<'g> Solver<'g> {
    pub fn new(graph: &'g GameGraph, budget: SolveBudget) -> Result<Self, SolveError> {
        let codec = StateCodec::new(graph).ok_or(SolveError::StateSpaceTooLarge)?;
        let max_moves = (0..graph.vertex_count())
            .map(|v| graph.incident(v).iter().map(|&(_, e)| u64::from(graph.edges()[e].w)).sum::<u64>())
            .max()
            .unwrap_or(0);
        let memo = if codec.space <= DENSE_LIMIT && max_moves <= DENSE_MAX_MOVES {
            Memo::Dense(vec![0; codec.space as usize])
        } else {
            Memo::Sparse(FxHashMap::default())
        };
        Ok(Self { graph, codec, memo, budget, stored: 0 })
    }

    pub fn graph(&self) -> &'g GameGraph {
        self.graph
    }

    /// Number of memoized states.
    pub fn memo_len(&self) -> u64 {
        self.stored
    }

    pub fn grundy(&mut self, state: &GameState) -> Result<u32, SolveError> {
        self.graph.check_state(state)?;
        let code = self.codec.code(&state.weights);
        if let Some(g) = self.memo.get(self.codec.key(code, state.token)) {
            return Ok(g);
        }
        let mut weights = state.weights.clone();
        self.search(&mut weights, code, state.token)
    }

    pub fn solve(&mut self, state: &GameState) -> Result<Analysis, SolveError> {
        let before = self.stored;
        let grundy = self.grundy(state)?;
        let optimal_moves = self
            .graph
            .legal_moves(state)
            .into_iter()
            .filter(|&mv| self.child_grundy(state, mv) == 0)
            .collect();
        let winner = if grundy > 0 { Winner::MoverWins } else { Winner::OpponentWins };
        Ok(Analysis { winner, grundy, optimal_moves, states_visited: self.stored - before })
    }

    /// Grundy value of a child of an already-solved state.
    fn child_grundy(&self, state: &GameState, mv: Move) -> u32 {
        let child = self.graph.apply_move(state, mv).expect("legal move");
        self.memo.get(self.codec.encode(&child)).expect("children of solved states are memoized")
    }

    /// Principal line from `state`: the mover plays its first optimal move
    /// when winning and its first legal move otherwise, until the game ends.
    pub fn best_line(&mut self, state: &GameState) -> Result<Vec<Move>, SolveError> {
        let mut line = Vec::new();
        let mut current = state.clone();
        loop {
            let analysis = self.solve(&current)?;
            let mv = match analysis.optimal_moves.first() {
                Some(&mv) => mv,
                None => match self.graph.legal_moves(&current).first() {
                    Some(&mv) => mv,
                    None => return Ok(line),
                },
            };
            current = self.graph.apply_move(&current, mv).expect("legal move");
            line.push(mv);
        }
    }

    fn search(&mut self, weights: &mut [u32], code: u128, token: Vertex) -> Result<u32, SolveError> {
        let graph = self.graph;
        let mut stack = vec![Frame { code, token, adj: 0, next_weight: 0, restore: None, seen: Seen::default() }];
        loop {
            let frame = stack.last_mut().expect("stack is non-empty inside the loop");
            let incident = graph.incident(frame.token);
            let mut descend = None;
            while frame.adj < incident.len() {
                let (to, e) = incident[frame.adj];
                let w = weights[e];
                if frame.next_weight >= w {
                    frame.adj += 1;
                    frame.next_weight = 0;
                    continue;
                }
                let k = frame.next_weight;
                frame.next_weight += 1;
                let child_code = frame.code - u128::from(w - k) * self.codec.stride(e);
                match self.memo.get(self.codec.key(child_code, to)) {
                    Some(g) => frame.seen.insert(g),
                    None => {
                        descend = Some((child_code, to, e, w, k));
                        break;
                    }
                }
            }
            if let Some((child_code, to, e, w, k)) = descend {
                weights[e] = k;
                stack.push(Frame {
                    code: child_code,
                    token: to,
                    adj: 0,
                    next_weight: 0,
                    restore: Some((e, w)),
                    seen: Seen::default(),
                });
                continue;
            }

            let mut done = stack.pop().expect("frame exists");
            let g = done.seen.mex();
            if self.stored >= self.budget.max_states {
                return Err(SolveError::BudgetExceeded {
                    max_states: self.budget.max_states,
                    states_visited: self.stored,
                });
            }
            self.memo.insert(self.codec.key(done.code, done.token), g);
            self.stored += 1;
            match (done.restore, stack.last_mut()) {
                (Some((e, w)), Some(parent)) => {
                    weights[e] = w;
                    parent.seen.insert(g);
                }
                _ => return Ok(g),
            }
        }
    }

    /// Re-checks every memo entry: each stored grundy value must be the mex
    /// of its children's stored values, and every child must be present.
    /// Returns the number of entries checked.
    pub fn audit(&self) -> Result<u64, AuditViolation> {
        let mut checked = 0;
        for (key, stored) in self.memo.entries() {
            let state = self.codec.decode(key);
            let mut seen = Seen::default();
            let mut complete = true;
            for mv in self.graph.legal_moves(&state) {
                let child = self.graph.apply_move(&state, mv).expect("legal move");
                match self.memo.get(self.codec.encode(&child)) {
                    Some(g) => seen.insert(g),
                    None => complete = false,
                }
            }
            let expected = if complete { seen.mex() } else { u32::MAX };
            if expected != stored {
                return Err(AuditViolation { state, stored, expected });
            }
            checked += 1;
        }
        Ok(checked)
    }
}

/// One-shot convenience wrapper around [`Solver::solve`].
pub fn solve(graph: &GameGraph, state: &GameState, budget: SolveBudget) -> Result<Analysis, SolveError> {
    Solver::new(graph, budget)?.solve(state)
}

pub fn best_line(graph: &GameGraph, state: &GameState, budget: SolveBudget) -> Result<Vec<Move>, SolveError> {
    Solver::new(graph, budget)?.best_line(state)
}
