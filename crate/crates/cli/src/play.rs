//! Terminal game loop against the engine.

use std::io::{BufRead, Write};

use nimgraph_core::strategies::dispatch;
use nimgraph_core::{label, GameGraph, GameState, Move, SolveBudget, Solver};

use crate::{Engine, Failure};

/// Parses `v2 0` or `2 0` (1-based vertex, new weight).
fn parse_move(line: &str) -> Result<Move, String> {
    let mut parts = line.split_whitespace();
    let (Some(v), Some(w), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err("enter a move as `<vertex> <new weight>`, e.g. `v2 0`".into());
    };
    let v: usize = v.trim_start_matches('v').parse().map_err(|_| format!("bad vertex `{v}`"))?;
    let w: u32 = w.parse().map_err(|_| format!("bad weight `{w}`"))?;
    if v == 0 {
        return Err("vertices are numbered from v1".into());
    }
    Ok(Move::new(v - 1, w))
}

fn show(graph: &GameGraph, state: &GameState, out: &mut dyn Write) -> std::io::Result<()> {
    let edges: Vec<String> = graph
        .edges()
        .iter()
        .zip(&state.weights)
        .filter(|(_, &w)| w > 0)
        .map(|(e, w)| format!("{}-{}:{w}", label(e.u), label(e.v)))
        .collect();
    writeln!(out, "token on {}; edges {}", label(state.token), edges.join(" "))
}

fn engine_move(graph: &GameGraph, state: &GameState, engine: Engine, solver: &mut Solver<'_>) -> Result<(Move, String), Failure> {
    if engine == Engine::Strategy {
        let d = dispatch(graph, state);
        if let (Some(kind), Some(mv)) = (d.strategy, d.chosen) {
            return Ok((mv, kind.name().to_string()));
        }
    }
    let analysis = solver.solve(state)?;
    let mv = match analysis.optimal_moves.first() {
        Some(&mv) => mv,
        None => graph.legal_moves(state)[0],
    };
    Ok((mv, "oracle".into()))
}

pub fn play(
    graph: &GameGraph,
    engine: Engine,
    engine_first: bool,
    budget: SolveBudget,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let mut solver = Solver::new(graph, budget)?;
    let mut state = graph.fresh_state();
    let mut engine_to_move = engine_first;
    loop {
        show(graph, &state, out)?;
        if graph.is_terminal(&state) {
            let loser = if engine_to_move { "engine" } else { "you" };
            writeln!(out, "no moves left: {loser} lose{}", if engine_to_move { "s" } else { "" })?;
            return Ok(());
        }
        let mv = if engine_to_move {
            let (mv, by) = engine_move(graph, &state, engine, &mut solver)?;
            writeln!(out, "engine plays {mv} ({by})")?;
            mv
        } else {
            loop {
                write!(out, "your move> ")?;
                out.flush()?;
                let mut line = String::new();
                if input.read_line(&mut line)? == 0 || line.trim() == "quit" {
                    writeln!(out)?;
                    writeln!(out, "game abandoned")?;
                    return Ok(());
                }
                match parse_move(&line).and_then(|mv| graph.apply_move(&state, mv).map(|_| mv).map_err(|e| e.to_string())) {
                    Ok(mv) => break mv,
                    Err(e) => writeln!(out, "illegal: {e}")?,
                }
            }
        };
        state = graph.apply_move(&state, mv).expect("validated move");
        engine_to_move = !engine_to_move;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_one_based_moves() {
        assert_eq!(parse_move("v2 0"), Ok(Move::new(1, 0)));
        assert_eq!(parse_move(" 3 5\n"), Ok(Move::new(2, 5)));
        assert!(parse_move("v0 1").is_err());
        assert!(parse_move("v2").is_err());
        assert!(parse_move("v2 1 3").is_err());
        assert!(parse_move("x y").is_err());
    }
}
