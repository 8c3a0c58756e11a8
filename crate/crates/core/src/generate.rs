//! Generators for the graph families studied here.
//!
//! Vertex enumeration follows the usual labelling: paths and cycles run
//! `0, 1, 2, ...` along the graph, and for `K_{2,j}` and `SSB_j` vertices 0
//! and 1 are the hubs (the side of size two) with the `j` leaves after them.
//! The token always starts on vertex 0.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, GameGraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    /// Path on `n` vertices (`n - 1` edges).
    Path { n: usize },
    /// Cycle on `n >= 3` vertices.
    Cycle { n: usize },
    Complete { n: usize },
    /// `K_{2,j}`.
    CompleteBipartite { j: usize },
    /// `K_{2,j}` plus the hub-hub edge.
    Ssb { j: usize },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Path { .. } => "path",
            Family::Cycle { .. } => "cycle",
            Family::Complete { .. } => "complete",
            Family::CompleteBipartite { .. } => "k2j",
            Family::Ssb { .. } => "ssb",
        }
    }

    pub fn param(&self) -> usize {
        match *self {
            Family::Path { n } | Family::Cycle { n } | Family::Complete { n } => n,
            Family::CompleteBipartite { j } | Family::Ssb { j } => j,
        }
    }

    pub fn from_name(name: &str, param: usize) -> Result<Self, FamilyError> {
        Ok(match name {
            "path" => Family::Path { n: param },
            "cycle" => Family::Cycle { n: param },
            "complete" => Family::Complete { n: param },
            "k2j" | "complete_bipartite" => Family::CompleteBipartite { j: param },
            "ssb" => Family::Ssb { j: param },
            other => return Err(FamilyError::UnknownFamily(other.to_string())),
        })
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            Family::Path { n } | Family::Cycle { n } | Family::Complete { n } => n,
            Family::CompleteBipartite { j } | Family::Ssb { j } => j + 2,
        }
    }

    /// Edge list without weights, in canonical order.
    pub fn structure(&self) -> Result<Vec<(Vertex, Vertex)>, FamilyError> {
        let mut pairs = Vec::new();
        match *self {
            Family::Path { n } => {
                if n < 1 {
                    return Err(FamilyError::Parameter { family: "path", min: 1, got: n });
                }
                pairs.extend((1..n).map(|i| (i - 1, i)));
            }
            Family::Cycle { n } => {
                if n < 3 {
                    return Err(FamilyError::Parameter { family: "cycle", min: 3, got: n });
                }
                pairs.extend((0..n).map(|i| (i, (i + 1) % n)));
            }
            Family::Complete { n } => {
                if n < 1 {
                    return Err(FamilyError::Parameter { family: "complete", min: 1, got: n });
                }
                for u in 0..n {
                    pairs.extend((u + 1..n).map(|v| (u, v)));
                }
            }
            Family::CompleteBipartite { j } | Family::Ssb { j } => {
                if j < 1 {
                    return Err(FamilyError::Parameter { family: self.name(), min: 1, got: j });
                }
                if matches!(self, Family::Ssb { .. }) {
                    pairs.push((0, 1));
                }
                for hub in 0..2 {
                    pairs.extend((2..j + 2).map(|leaf| (hub, leaf)));
                }
            }
        }
        Ok(pairs)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name(), self.param())
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    /// Parses `name:param`, e.g. `ssb:4` or `cycle:6`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, param) = s.split_once(':').ok_or_else(|| FamilyError::Syntax(s.to_string()))?;
        let param = param.parse().map_err(|_| FamilyError::Syntax(s.to_string()))?;
        Family::from_name(name, param)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightSpec {
    Uniform { k: u32 },
    Explicit { weights: Vec<u32> },
    /// Independent uniform draws from `1..=cap`, one per edge in edge order.
    Random { cap: u32, seed: u64 },
}

impl WeightSpec {
    /// Parses `uniform:<k>`, `list:<w1>,<w2>,...` or `random:<cap>`; random
    /// assignments take `seed`, defaulting to 0.
    pub fn parse(s: &str, seed: Option<u64>) -> Result<Self, FamilyError> {
        let bad = || FamilyError::Syntax(s.to_string());
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "uniform" => Ok(WeightSpec::Uniform { k: rest.parse().map_err(|_| bad())? }),
            "list" | "explicit" => {
                let weights = rest
                    .split(',')
                    .map(|w| w.trim().parse())
                    .collect::<Result<Vec<u32>, _>>()
                    .map_err(|_| bad())?;
                Ok(WeightSpec::Explicit { weights })
            }
            "random" => Ok(WeightSpec::Random { cap: rest.parse().map_err(|_| bad())?, seed: seed.unwrap_or(0) }),
            _ => Err(bad()),
        }
    }

    pub fn assign(&self, edge_count: usize) -> Result<Vec<u32>, FamilyError> {
        let weights = match self {
            WeightSpec::Uniform { k } => vec![*k; edge_count],
            WeightSpec::Explicit { weights } => {
                if weights.len() != edge_count {
                    return Err(FamilyError::WeightCount { expected: edge_count, got: weights.len() });
                }
                weights.clone()
            }
            WeightSpec::Random { cap, seed } => {
                if *cap < 1 {
                    return Err(FamilyError::ZeroWeight);
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..edge_count).map(|_| rng.gen_range(1..=*cap)).collect()
            }
        };
        if weights.contains(&0) {
            return Err(FamilyError::ZeroWeight);
        }
        Ok(weights)
    }
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSpec::Uniform { k } => write!(f, "uniform:{k}"),
            WeightSpec::Explicit { weights } => {
                let list: Vec<String> = weights.iter().map(u32::to_string).collect();
                write!(f, "list:{}", list.join(","))
            }
            WeightSpec::Random { cap, seed } => write!(f, "random:{cap}@{seed}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family `{0}` (expected path, cycle, complete, k2j or ssb)")]
    UnknownFamily(String),
    #[error("{family} needs a parameter of at least {min}, got {got}")]
    Parameter { family: &'static str, min: usize, got: usize },
    #[error("cannot parse `{0}`")]
    Syntax(String),
    #[error("weight list has {got} entries but the family has {expected} edges")]
    WeightCount { expected: usize, got: usize },
    #[error("edge weights must be at least 1")]
    ZeroWeight,
}

pub fn generate(family: Family, weights: &WeightSpec) -> Result<GameGraph, FamilyError> {
    let pairs = family.structure()?;
    let ws = weights.assign(pairs.len())?;
    let edges = pairs.into_iter().zip(ws).map(|((u, v), w)| Edge { u, v, w }).collect();
    Ok(GameGraph::new(family.vertex_count(), edges, 0).expect("generated families are simple graphs"))
}

/// Shorthand for a unit-weight member of `family`.
pub fn unit(family: Family) -> Result<GameGraph, FamilyError> {
    generate(family, &WeightSpec::Uniform { k: 1 })
}

/// Random unit-weight graph on `3..=max_vertices` vertices with a planted
/// mutually adjacent pair; the token starts on one vertex of the pair.
///
/// The two pair vertices are adjacent to each other and to a random
/// non-empty set of common neighbors and nothing else; the remaining
/// vertices are joined independently with probability `edge_probability`.
/// Labels are shuffled so the pair can sit anywhere.
pub fn planted_mutual_pair(max_vertices: usize, edge_probability: f64, seed: u64) -> Result<GameGraph, FamilyError> {
    if max_vertices < 3 {
        return Err(FamilyError::Parameter { family: "planted", min: 3, got: max_vertices });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(3..=max_vertices);
    let mut labels: Vec<Vertex> = (0..n).collect();
    labels.shuffle(&mut rng);
    let (a, b) = (labels[0], labels[1]);
    let rest = &labels[2..];
    let mut common: Vec<Vertex> = rest.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    if common.is_empty() {
        common.push(rest[0]);
    }
    let mut pairs = vec![(a, b)];
    for &c in &common {
        pairs.push((a, c));
        pairs.push((b, c));
    }
    for (i, &u) in rest.iter().enumerate() {
        for &v in &rest[i + 1..] {
            if rng.gen_bool(edge_probability) {
                pairs.push((u, v));
            }
        }
    }
    let mut edges: Vec<Edge> = pairs.into_iter().map(|(u, v)| Edge { u: u.min(v), v: u.max(v), w: 1 }).collect();
    edges.sort_by_key(|e| (e.u, e.v));
    Ok(GameGraph::new(n, edges, a).expect("planted graph is simple"))
}
