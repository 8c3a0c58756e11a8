//! Nim on weighted graphs.
//!
//! Two players alternately pick a positive-weight edge incident to the
//! token, lower its weight, and move the token across it; the player with no
//! move loses. This crate holds the game model, an exhaustive Sprague-Grundy
//! oracle, structure detection, closed-form strategies for the known graph
//! families, and an exhaustive verification harness tying them together.

pub mod generate;
pub mod graph;
pub mod instance;
pub mod solver;
pub mod strategies;
pub mod structures;
pub mod suites;
pub mod verify;

pub use generate::{generate, Family, FamilyError, WeightSpec};
pub use graph::{label, Edge, GameGraph, GameState, GraphError, Move, MoveError, StateError, Vertex};
pub use instance::{parse_instance, serialize_instance, ParseError};
pub use solver::{best_line, solve, Analysis, SolveBudget, SolveError, Solver, Winner};
pub use strategies::{
    dispatch, Dispatch, Outcome, Player, Prediction, StrategyError, StrategyKind, StrategyPlayer,
};
pub use structures::{detect, identical_options, isomorphic_options, PositiveView, StructureTag};
pub use suites::{Suite, SuiteParams};
pub use verify::{
    verify_strategy_exhaustive, verify_strategy_with, Branching, Claimant, Failure, Instance, InstanceRow, StartSpec, StrategyCheck, VerificationReport,
    VerifyError,
};
