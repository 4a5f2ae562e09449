//! Finite simple graphs on dense vertex ids `0..n`.
//!
//! A [`Graph`] is immutable once built. Every constructor validates the
//! simple-graph invariants (symmetric, irreflexive, in-range), so the rest of
//! the crate can rely on them without re-checking.

mod format;

pub use format::{emit_graph, parse_graph, GraphFormat, GraphJson};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge #{index} ({u}, {v}) is a self-loop")]
    SelfLoop { index: usize, u: usize, v: usize },
    #[error("edge #{index} ({u}, {v}) references a vertex >= n = {n}")]
    EdgeOutOfRange { index: usize, u: usize, v: usize, n: usize },
    #[error("edge #{index} ({u}, {v}) is not stored as u < v")]
    NonCanonicalEdge { index: usize, u: usize, v: usize },
    #[error("edge #{index} ({u}, {v}) is a duplicate")]
    DuplicateEdge { index: usize, u: usize, v: usize },
    #[error("vertex {vertex} is out of range for a graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("names list has length {got}, expected {expected}")]
    NamesLength { got: usize, expected: usize },
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("malformed graph input: {0}")]
    Malformed(String),
}

/// Undirected simple graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    names: Option<Vec<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], names: None }
    }

    /// Builds a graph from an edge list, accepting either orientation but
    /// rejecting self-loops and repeated edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (index, (u, v)) in edges.into_iter().enumerate() {
            if u >= n || v >= n {
                return Err(GraphError::EdgeOutOfRange { index, u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { index, u, v });
            }
            if adj[u].contains(&v) {
                return Err(GraphError::DuplicateEdge { index, u, v });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj, names: None })
    }

    /// Attaches display names, one per vertex.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, GraphError> {
        if names.len() != self.order() {
            return Err(GraphError::NamesLength { got: names.len(), expected: self.order() });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Independent set test, used for fibre checks.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Dense adjacency matrix, row-major.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        let n = self.order();
        let mut m = vec![vec![0u8; n]; n];
        for (u, v) in self.edges() {
            m[u][v] = 1;
            m[v][u] = 1;
        }
        m
    }
}

/// Path with `k` edges on vertices `0..=k`.
pub fn make_path(k: usize) -> Graph {
    Graph::from_edges(k + 1, (0..k).map(|i| (i, i + 1))).expect("path edges are valid")
}

pub fn make_cycle(k: usize) -> Result<Graph, GraphError> {
    if k < 3 {
        return Err(GraphError::CycleTooShort(k));
    }
    Ok(Graph::from_edges(k, (0..k).map(|i| (i, (i + 1) % k))).expect("cycle edges are valid"))
}

pub fn make_complete(k: usize) -> Graph {
    let edges = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v)));
    Graph::from_edges(k, edges).expect("complete graph edges are valid")
}

fn offset_union(x: &Graph, y: &Graph, cross: bool) -> Graph {
    let nx = x.order();
    let ny = y.order();
    let mut adj = Vec::with_capacity(nx + ny);
    for u in 0..nx {
        let mut list = x.adj[u].clone();
        if cross {
            list.extend(nx..nx + ny);
        }
        adj.push(list);
    }
    for u in 0..ny {
        let mut list: Vec<usize> = if cross { (0..nx).collect() } else { Vec::new() };
        list.extend(y.adj[u].iter().map(|&w| w + nx));
        adj.push(list);
    }
    let names = match (&x.names, &y.names) {
        (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
        _ => None,
    };
    Graph { adj, names }
}

/// `x ∨ y`: disjoint copies with every cross pair joined. Vertex `i` of `y`
/// becomes `|V(x)| + i`.
pub fn join(x: &Graph, y: &Graph) -> Graph {
    offset_union(x, y, true)
}

/// Disjoint union with the same offset convention as [`join`].
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Graph {
    offset_union(g1, g2, false)
}

/// A validated set of vertices of some graph, kept sorted and distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSubset {
    members: Vec<usize>,
}

impl VertexSubset {
    pub fn new(g: &Graph, members: impl IntoIterator<Item = usize>) -> Result<Self, GraphError> {
        let n = g.order();
        let mut members: Vec<usize> = members.into_iter().collect();
        if let Some(&vertex) = members.iter().find(|&&v| v >= n) {
            return Err(GraphError::VertexOutOfRange { vertex, n });
        }
        members.sort_unstable();
        members.dedup();
        Ok(VertexSubset { members })
    }

    pub fn all(g: &Graph) -> Self {
        VertexSubset { members: g.vertices().collect() }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub(crate) fn check_parent(&self, g: &Graph) -> Result<(), GraphError> {
        match self.members.last() {
            Some(&vertex) if vertex >= g.order() => {
                Err(GraphError::VertexOutOfRange { vertex, n: g.order() })
            }
            _ => Ok(()),
        }
    }
}

/// Subgraph induced by `s`. The second value maps each new id to its
/// original id in `g`.
pub fn induced_subgraph(g: &Graph, s: &VertexSubset) -> Result<(Graph, Vec<usize>), GraphError> {
    s.check_parent(g)?;
    let members = s.members();
    let mut index = vec![usize::MAX; g.order()];
    for (i, &v) in members.iter().enumerate() {
        index[v] = i;
    }
    let adj = members
        .iter()
        .map(|&v| {
            g.adj[v]
                .iter()
                .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                .collect()
        })
        .collect();
    let names = g.names.as_ref().map(|ns| members.iter().map(|&v| ns[v].clone()).collect());
    Ok((Graph { adj, names }, members.to_vec()))
}
