//! Structure detection on the positive-weight subgraph around the token.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{label, GameGraph, GameState, Vertex};

/// Families and local structures the closed-form strategies key on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum StructureTag {
    /// A pendant path from the token to a degree-1 vertex with an odd number
    /// of edges; `toward` is its first vertex after the token.
    OddPathOption { toward: Vertex, length: usize },
    /// The token's component is a path and every option from the token is an
    /// even path (vacuously so for an isolated token).
    AllEvenPathOptions,
    OddCycle { length: usize },
    EvenCycle { length: usize },
    /// Unit weights, and the token shares its whole neighborhood of size `j`
    /// with a non-adjacent vertex `other_hub`.
    K2jHubStart { j: usize, hub: Vertex, other_hub: Vertex },
    /// Unit weights, and the token's component is exactly `SSB_j` with the
    /// token on a hub.
    SsbHubStart { j: usize, hub: Vertex, other_hub: Vertex },
    Complete { n: usize },
    /// `a` (the token) and `b` are adjacent with `N(a)\{b} = N(b)\{a}`, of size `k`.
    MutuallyAdjacentPair { a: Vertex, b: Vertex, k: usize },
}

impl fmt::Display for StructureTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            StructureTag::OddPathOption { toward, length } => {
                write!(f, "OddPathOption(toward={}, length={length})", label(toward))
            }
            StructureTag::AllEvenPathOptions => write!(f, "AllEvenPathOptions"),
            StructureTag::OddCycle { length } => write!(f, "OddCycle({length})"),
            StructureTag::EvenCycle { length } => write!(f, "EvenCycle({length})"),
            StructureTag::K2jHubStart { j, hub, other_hub } => {
                write!(f, "K2jHubStart(j={j}, hubs={},{})", label(hub), label(other_hub))
            }
            StructureTag::SsbHubStart { j, hub, other_hub } => {
                write!(f, "SSBHubStart(j={j}, hubs={},{})", label(hub), label(other_hub))
            }
            StructureTag::Complete { n } => write!(f, "Complete({n})"),
            StructureTag::MutuallyAdjacentPair { a, b, k } => {
                write!(f, "MutuallyAdjacentPair({},{}, k={k})", label(a), label(b))
            }
        }
    }
}

/// The subgraph of positive-weight edges under some weight vector, with the
/// token's connected component precomputed.
pub struct PositiveView<'a> {
    graph: &'a GameGraph,
    weights: &'a [u32],
    token: Vertex,
    adjacency: Vec<Vec<Vertex>>,
    component: Vec<Vertex>,
    component_edges: Vec<usize>,
}

impl<'a> PositiveView<'a> {
    pub fn new(graph: &'a GameGraph, weights: &'a [u32], token: Vertex) -> Self {
        let adjacency: Vec<Vec<Vertex>> = (0..graph.vertex_count())
            .map(|v| graph.incident(v).iter().filter(|&&(_, e)| weights[e] > 0).map(|&(n, _)| n).collect())
            .collect();
        let mut seen = vec![false; graph.vertex_count()];
        let mut queue = VecDeque::from([token]);
        seen[token] = true;
        let mut component = Vec::new();
        while let Some(v) = queue.pop_front() {
            component.push(v);
            for &n in &adjacency[v] {
                if !seen[n] {
                    seen[n] = true;
                    queue.push_back(n);
                }
            }
        }
        component.sort_unstable();
        let component_edges = (0..graph.edges().len())
            .filter(|&e| weights[e] > 0 && seen[graph.edges()[e].u])
            .collect();
        Self { graph, weights, token, adjacency, component, component_edges }
    }

    pub fn of_state(graph: &'a GameGraph, state: &'a GameState) -> Self {
        Self::new(graph, &state.weights, state.token)
    }

    pub fn token(&self) -> Vertex {
        self.token
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Positive weight of the edge `{u, v}`, 0 when absent.
    pub fn weight(&self, u: Vertex, v: Vertex) -> u32 {
        self.graph.edge_between(u, v).map_or(0, |e| self.weights[e])
    }

    /// Sorted vertices of the token's component.
    pub fn component(&self) -> &[Vertex] {
        &self.component
    }

    /// Positive-weight edge indices inside the token's component.
    pub fn component_edges(&self) -> &[usize] {
        &self.component_edges
    }

    pub fn component_is_unit(&self) -> bool {
        self.component_edges.iter().all(|&e| self.weights[e] == 1)
    }

    /// Connected, acyclic, maximum degree 2. An isolated token counts.
    pub fn component_is_path(&self) -> bool {
        self.component_edges.len() + 1 == self.component.len() && self.component.iter().all(|&v| self.degree(v) <= 2)
    }

    pub fn component_cycle_length(&self) -> Option<usize> {
        let n = self.component.len();
        (n >= 3 && self.component_edges.len() == n && self.component.iter().all(|&v| self.degree(v) == 2))
            .then_some(n)
    }

    pub fn component_is_complete(&self) -> bool {
        let n = self.component.len();
        n >= 2 && self.component.iter().all(|&v| self.degree(v) == n - 1)
    }

    /// For each option `u` of `from` whose direction is a pendant path
    /// (interior vertices of degree 2) ending at a degree-1 vertex, returns
    /// `(u, edge count)`. Ordered by `u`.
    pub fn pendant_paths(&self, from: Vertex) -> Vec<(Vertex, usize)> {
        let mut out = Vec::new();
        for &first in &self.adjacency[from] {
            let (mut prev, mut cur, mut length) = (from, first, 1);
            loop {
                match self.adjacency[cur][..] {
                    [_] => {
                        out.push((first, length));
                        break;
                    }
                    [x, y] => {
                        let next = if x == prev { y } else { x };
                        if next == from {
                            break;
                        }
                        (prev, cur, length) = (cur, next, length + 1);
                    }
                    _ => break,
                }
            }
        }
        out
    }

    /// First option of the token that starts an odd pendant path.
    pub fn odd_path_option(&self) -> Option<(Vertex, usize)> {
        self.pendant_paths(self.token).into_iter().find(|&(_, len)| len % 2 == 1)
    }

    /// Partners `b` adjacent to `a` with `N(a)\{b} = N(b)\{a}`, with the
    /// common neighborhood size.
    pub fn mutual_partners(&self, a: Vertex) -> Vec<(Vertex, usize)> {
        let na = &self.adjacency[a];
        na.iter()
            .copied()
            .filter(|&b| {
                let nb = &self.adjacency[b];
                na.len() == nb.len() && na.iter().filter(|&&x| x != b).all(|&x| x == a || self.adjacent(b, x))
            })
            .map(|b| (b, na.len() - 1))
            .collect()
    }

    /// Non-adjacent vertices with exactly the same (non-empty) neighborhood as `a`.
    pub fn twin_hubs(&self, a: Vertex) -> Vec<Vertex> {
        let na = &self.adjacency[a];
        if na.is_empty() {
            return Vec::new();
        }
        self.component.iter().copied().filter(|&b| b != a && self.adjacency[b] == *na).collect()
    }
}

/// All tags that apply to the token's position, sorted.
pub fn detect(graph: &GameGraph, state: &GameState) -> Vec<StructureTag> {
    let view = PositiveView::of_state(graph, state);
    let token = state.token;
    let mut tags = Vec::new();

    if let Some((toward, length)) = view.odd_path_option() {
        tags.push(StructureTag::OddPathOption { toward, length });
    } else if view.component_is_path() {
        tags.push(StructureTag::AllEvenPathOptions);
    }
    if let Some(length) = view.component_cycle_length() {
        tags.push(if length % 2 == 1 { StructureTag::OddCycle { length } } else { StructureTag::EvenCycle { length } });
    }

    let unit = view.component_is_unit();
    let partners = view.mutual_partners(token);
    if unit {
        if let Some(&other_hub) = view.twin_hubs(token).first() {
            tags.push(StructureTag::K2jHubStart { j: view.degree(token), hub: token, other_hub });
        }
        let ssb = partners.iter().find(|&&(b, k)| {
            k >= 1
                && view.component().len() == k + 2
                && view.neighbors(token).iter().all(|&c| c == b || view.degree(c) == 2)
        });
        if let Some(&(other_hub, j)) = ssb {
            tags.push(StructureTag::SsbHubStart { j, hub: token, other_hub });
        }
    }
    if view.component_is_complete() {
        tags.push(StructureTag::Complete { n: view.component().len() });
    }
    tags.extend(partners.into_iter().map(|(b, k)| StructureTag::MutuallyAdjacentPair { a: token, b, k }));
    tags.sort();
    tags
}

/// Partitions the token's options into classes of identical options: two
/// options are identical when a weight-preserving isomorphism maps the
/// closed neighborhood of one onto that of the other, fixing the token.
pub fn identical_options(graph: &GameGraph, state: &GameState) -> Vec<Vec<Vertex>> {
    option_classes(graph, state, true)
}

/// As [`identical_options`] but ignoring weights.
pub fn isomorphic_options(graph: &GameGraph, state: &GameState) -> Vec<Vec<Vertex>> {
    option_classes(graph, state, false)
}

fn option_classes(graph: &GameGraph, state: &GameState, weighted: bool) -> Vec<Vec<Vertex>> {
    let view = PositiveView::of_state(graph, state);
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    for &o in view.neighbors(state.token) {
        match classes.iter_mut().find(|c| neighborhoods_match(&view, c[0], o, weighted)) {
            Some(class) => class.push(o),
            None => classes.push(vec![o]),
        }
    }
    classes
}

fn closed_neighborhood(view: &PositiveView<'_>, o: Vertex) -> Vec<Vertex> {
    let token = view.token();
    let mut out = vec![o, token];
    out.extend(view.neighbors(o).iter().copied().filter(|&x| x != token));
    out
}

fn neighborhoods_match(view: &PositiveView<'_>, p: Vertex, q: Vertex, weighted: bool) -> bool {
    let a = closed_neighborhood(view, p);
    let b = closed_neighborhood(view, q);
    if a.len() != b.len() {
        return false;
    }
    let relation = |x: Vertex, y: Vertex| {
        let w = view.weight(x, y);
        if weighted {
            w
        } else {
            u32::from(w > 0)
        }
    };
    // a[i] maps to b[image[i]]; the first two entries (option, token) are pinned.
    let mut image = vec![0, 1];
    let mut used = vec![false; b.len()];
    used[0] = true;
    used[1] = true;
    if relation(a[0], a[1]) != relation(b[0], b[1]) {
        return false;
    }
    extend_match(&a, &b, &mut image, &mut used, &relation)
}

fn extend_match(
    a: &[Vertex],
    b: &[Vertex],
    image: &mut Vec<usize>,
    used: &mut [bool],
    relation: &impl Fn(Vertex, Vertex) -> u32,
) -> bool {
    let i = image.len();
    if i == a.len() {
        return true;
    }
    for j in 0..b.len() {
        if used[j] {
            continue;
        }
        if (0..i).all(|k| relation(a[k], a[i]) == relation(b[image[k]], b[j])) {
            used[j] = true;
            image.push(j);
            if extend_match(a, b, image, used, relation) {
                return true;
            }
            image.pop();
            used[j] = false;
        }
    }
    false
}
