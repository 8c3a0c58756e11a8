//! The line-oriented `nimgraph 1` instance format.
//!
//! ```text
//! nimgraph 1
//! vertices 4
//! start 0
//! edge 0 1 3
//! edge 1 2 2
//! ```
//!
//! Lines starting with `#` are comments. Edge order defines the weight-vector
//! index order.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Edge, GameGraph, GraphError};

const HEADER: &str = "nimgraph 1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected header `{HEADER}`")]
    MissingHeader,
    #[error("expected `{0}`")]
    Expected(&'static str),
    #[error("invalid integer `{0}`")]
    BadInteger(String),
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("loop edge on vertex {0}")]
    Loop(usize),
    #[error("duplicate edge ({0}, {1}), first given on line {2}")]
    DuplicateEdge(usize, usize, usize),
    #[error("edge weight must be at least 1")]
    ZeroWeight,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("unexpected end of input")]
    UnexpectedEnd,
}

fn integer<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T, ParseError> {
    tok.parse().map_err(|_| ParseError { line, kind: ParseErrorKind::BadInteger(tok.to_string()) })
}

pub fn parse_instance(text: &str) -> Result<GameGraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line, header) = lines.next().ok_or(ParseError { line: 1, kind: ParseErrorKind::UnexpectedEnd })?;
    if header.split_whitespace().collect::<Vec<_>>() != ["nimgraph", "1"] {
        return Err(ParseError { line, kind: ParseErrorKind::MissingHeader });
    }

    let mut keyed = |key: &str, shape: &'static str| -> Result<(usize, usize), ParseError> {
        let (line, l) = lines.next().ok_or(ParseError { line, kind: ParseErrorKind::UnexpectedEnd })?;
        match l.split_whitespace().collect::<Vec<_>>()[..] {
            [k, v] if k == key => Ok((line, integer(v, line)?)),
            _ => Err(ParseError { line, kind: ParseErrorKind::Expected(shape) }),
        }
    };
    let (vline, vertex_count) = keyed("vertices", "vertices <n>")?;
    if vertex_count == 0 {
        return Err(ParseError { line: vline, kind: ParseErrorKind::NoVertices });
    }
    let (sline, start) = keyed("start", "start <v>")?;
    if start >= vertex_count {
        return Err(ParseError { line: sline, kind: ParseErrorKind::VertexOutOfRange(start) });
    }

    let mut edges = Vec::new();
    let mut edge_lines = Vec::new();
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[..] {
            ["edge", u, v, w] => {
                let (u, v, w): (usize, usize, i64) = (integer(u, line)?, integer(v, line)?, integer(w, line)?);
                let err = |kind| ParseError { line, kind };
                for x in [u, v] {
                    if x >= vertex_count {
                        return Err(err(ParseErrorKind::VertexOutOfRange(x)));
                    }
                }
                if u == v {
                    return Err(err(ParseErrorKind::Loop(u)));
                }
                if w < 1 {
                    return Err(err(ParseErrorKind::ZeroWeight));
                }
                let w = u32::try_from(w).map_err(|_| err(ParseErrorKind::BadInteger(toks[3].to_string())))?;
                edges.push(Edge { u, v, w });
                edge_lines.push(line);
            }
            [directive, ..] => {
                return Err(ParseError { line, kind: ParseErrorKind::UnknownDirective(directive.to_string()) })
            }
            [] => unreachable!("blank lines are filtered"),
        }
    }

    GameGraph::new(vertex_count, edges, start).map_err(|e| match e {
        GraphError::DuplicateEdge { index, first, u, v } => ParseError {
            line: edge_lines[index],
            kind: ParseErrorKind::DuplicateEdge(u, v, edge_lines[first]),
        },
        other => unreachable!("validated above: {other}"),
    })
}

pub fn serialize_instance(graph: &GameGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "vertices {}", graph.vertex_count()).unwrap();
    writeln!(out, "start {}", graph.start()).unwrap();
    for e in graph.edges() {
        writeln!(out, "edge {} {} {}", e.u, e.v, e.w).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let text = "# left C4\nnimgraph 1\nvertices 4\n\nstart 0\nedge 0 1 3\n# mid\nedge 1 2 2\nedge 2 3 4\nedge 3 0 4\n";
        let g = parse_instance(text).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edges().len(), 4);
        assert_eq!(g.edges()[2], Edge { u: 2, v: 3, w: 4 });
        assert_eq!(parse_instance(&serialize_instance(&g)).unwrap(), g);
    }

    #[test]
    fn loop_is_rejected_with_position() {
        let err = parse_instance("nimgraph 1\nvertices 2\nstart 0\nedge 0 0 1\n").unwrap_err();
        assert_eq!(err, ParseError { line: 4, kind: ParseErrorKind::Loop(0) });
    }

    #[test]
    fn duplicate_is_rejected_with_position() {
        let err = parse_instance("nimgraph 1\nvertices 3\nstart 0\nedge 0 1 1\nedge 1 2 1\nedge 0 1 5\n").unwrap_err();
        assert_eq!(err, ParseError { line: 6, kind: ParseErrorKind::DuplicateEdge(0, 1, 4) });
        let err = parse_instance("nimgraph 1\nvertices 3\nstart 0\nedge 0 1 1\nedge 1 0 2\n").unwrap_err();
        assert_eq!(err.line, 5);
    }

    #[test]
    fn weights_and_ranges() {
        let zero = parse_instance("nimgraph 1\nvertices 2\nstart 0\nedge 0 1 0\n").unwrap_err();
        assert_eq!(zero.kind, ParseErrorKind::ZeroWeight);
        let neg = parse_instance("nimgraph 1\nvertices 2\nstart 0\nedge 0 1 -3\n").unwrap_err();
        assert_eq!(neg.kind, ParseErrorKind::ZeroWeight);
        let range = parse_instance("nimgraph 1\nvertices 2\nstart 0\nedge 0 7 1\n").unwrap_err();
        assert_eq!(range, ParseError { line: 4, kind: ParseErrorKind::VertexOutOfRange(7) });
        let start = parse_instance("nimgraph 1\nvertices 2\nstart 2\n").unwrap_err();
        assert_eq!(start, ParseError { line: 3, kind: ParseErrorKind::VertexOutOfRange(2) });
    }

    #[test]
    fn structural_errors() {
        assert_eq!(parse_instance("").unwrap_err().kind, ParseErrorKind::UnexpectedEnd);
        assert_eq!(parse_instance("nimgraph 2\n").unwrap_err().kind, ParseErrorKind::MissingHeader);
        assert_eq!(
            parse_instance("nimgraph 1\nstart 0\n").unwrap_err(),
            ParseError { line: 2, kind: ParseErrorKind::Expected("vertices <n>") }
        );
        assert_eq!(
            parse_instance("nimgraph 1\nvertices x\n").unwrap_err().kind,
            ParseErrorKind::BadInteger("x".into())
        );
        assert_eq!(
            parse_instance("nimgraph 1\nvertices 2\nstart 0\nvertex 1\n").unwrap_err().kind,
            ParseErrorKind::UnknownDirective("vertex".into())
        );
        assert_eq!(parse_instance("nimgraph 1\nvertices 0\n").unwrap_err().kind, ParseErrorKind::NoVertices);
    }
}
