//! Weighted directed acyclic graphs and the path primitives built on them.
//!
//! Edge weights play the role of the proximity function: a strictly positive
//! finite value for every stored edge, nothing at all for unlinked pairs.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use thiserror::Error;

use crate::weights::{WeightError, WeightSequence};

/// Dense vertex index in `0..n_vertices`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId(i)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub from: VertexId,
    pub to: VertexId,
    pub weight: f64,
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} -> {}, {})", self.from, self.to, self.weight)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("directed cycle detected through vertex {0}")]
    CycleDetected(VertexId),
    #[error("edge {from} -> {to} has non-positive or non-finite weight {weight}")]
    NonPositiveWeight {
        from: VertexId,
        to: VertexId,
        weight: f64,
    },
    #[error("duplicate edge {from} -> {to}")]
    DuplicateEdge { from: VertexId, to: VertexId },
    #[error("vertex {vertex} out of range for a graph with {n_vertices} vertices")]
    VertexOutOfRange { vertex: usize, n_vertices: usize },
    #[error("{from} -> {to} is not an edge of the graph")]
    InvalidPath { from: VertexId, to: VertexId },
    #[error("cannot concatenate: first path ends at {end}, second starts at {start}")]
    EndpointMismatch { end: VertexId, start: VertexId },
    #[error("a path needs at least one vertex")]
    EmptyPath,
    #[error(transparent)]
    Weights(#[from] WeightError),
}

/// Immutable, validated DAG with strictly positive edge weights.
///
/// Edges are stored sorted by `(from, to)`; both adjacency indexes list
/// neighbours in ascending vertex order.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph {
    n_vertices: usize,
    edges: Vec<Edge>,
    incoming: Vec<Vec<(VertexId, f64)>>,
    outgoing: Vec<Vec<(VertexId, f64)>>,
    topo: Vec<VertexId>,
}

impl WeightedDigraph {
    /// Validates the edge list and builds both adjacency indexes.
    pub fn new<I>(n_vertices: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut stored = Vec::new();
        for (from, to, weight) in edges {
            for v in [from, to] {
                if v >= n_vertices {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: v,
                        n_vertices,
                    });
                }
            }
            let (from, to) = (VertexId(from), VertexId(to));
            if !(weight > 0.0 && weight.is_finite()) {
                return Err(GraphError::NonPositiveWeight { from, to, weight });
            }
            if from == to {
                return Err(GraphError::CycleDetected(from));
            }
            stored.push(Edge { from, to, weight });
        }
        stored.sort_by_key(|e| (e.from, e.to));
        if let Some(w) = stored
            .windows(2)
            .find(|w| (w[0].from, w[0].to) == (w[1].from, w[1].to))
        {
            return Err(GraphError::DuplicateEdge {
                from: w[0].from,
                to: w[0].to,
            });
        }

        let mut incoming = vec![Vec::new(); n_vertices];
        let mut outgoing = vec![Vec::new(); n_vertices];
        for e in &stored {
            outgoing[e.from.0].push((e.to, e.weight));
            incoming[e.to.0].push((e.from, e.weight));
        }
        for list in &mut incoming {
            list.sort_by_key(|&(u, _)| u);
        }

        let topo = kahn_order(n_vertices, &incoming, &outgoing)?;
        Ok(WeightedDigraph {
            n_vertices,
            edges: stored,
            incoming,
            outgoing,
            topo,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.0 < self.n_vertices
    }

    /// `(u, φ(u, v))` for every edge `u -> v`, ascending in `u`.
    pub fn incoming_neighbors(&self, v: VertexId) -> &[(VertexId, f64)] {
        &self.incoming[v.0]
    }

    /// `(w, φ(v, w))` for every edge `v -> w`, ascending in `w`.
    pub fn outgoing_neighbors(&self, v: VertexId) -> &[(VertexId, f64)] {
        &self.outgoing[v.0]
    }

    pub fn weight(&self, from: VertexId, to: VertexId) -> Option<f64> {
        let out = self.outgoing.get(from.0)?;
        out.binary_search_by_key(&to, |&(w, _)| w)
            .ok()
            .map(|i| out[i].1)
    }

    /// Every edge goes from an earlier to a later vertex in this order.
    /// Ties are broken by smallest index first, so the order is deterministic.
    pub fn topological_order(&self) -> &[VertexId] {
        &self.topo
    }

    /// Same vertices, every edge flipped.
    pub fn reversed(&self) -> WeightedDigraph {
        let edges = self.edges.iter().map(|e| (e.to.0, e.from.0, e.weight));
        WeightedDigraph::new(self.n_vertices, edges).expect("reversing a DAG keeps it valid")
    }

    /// Sum of edge weights along `p`.
    pub fn path_sum(&self, p: &Path) -> Result<f64, GraphError> {
        let mut sum = 0.0;
        for w in p.vertices().windows(2) {
            sum += self.weight(w[0], w[1]).ok_or(GraphError::InvalidPath {
                from: w[0],
                to: w[1],
            })?;
        }
        Ok(sum)
    }

    /// `W_{l(p)} · s(p)`; zero for the single-vertex path.
    pub fn path_distance(&self, p: &Path, w: &WeightSequence) -> Result<f64, GraphError> {
        let sum = self.path_sum(p)?;
        match p.len() {
            0 => Ok(0.0),
            len => Ok(w.weight_at(len)? * sum),
        }
    }
}

fn kahn_order(
    n: usize,
    incoming: &[Vec<(VertexId, f64)>],
    outgoing: &[Vec<(VertexId, f64)>],
) -> Result<Vec<VertexId>, GraphError> {
    let mut indegree: Vec<usize> = incoming.iter().map(Vec::len).collect();
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| indegree[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = ready.pop() {
        order.push(VertexId(v));
        for &(w, _) in &outgoing[v] {
            indegree[w.0] -= 1;
            if indegree[w.0] == 0 {
                ready.push(Reverse(w.0));
            }
        }
    }
    if order.len() < n {
        let stuck = (0..n).find(|&v| indegree[v] > 0).unwrap_or(0);
        return Err(GraphError::CycleDetected(VertexId(stuck)));
    }
    Ok(order)
}

/// Vertex sequence `(x0, …, xn)`. A single vertex is the empty path.
///
/// Edge membership is checked against a graph by [`WeightedDigraph::path_sum`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    vertices: Vec<VertexId>,
}

impl Path {
    pub fn new(vertices: Vec<VertexId>) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::EmptyPath);
        }
        Ok(Path { vertices })
    }

    pub fn from_indices(indices: &[usize]) -> Result<Self, GraphError> {
        Path::new(indices.iter().copied().map(VertexId).collect())
    }

    pub fn trivial(v: VertexId) -> Self {
        Path { vertices: vec![v] }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn first(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn last(&self) -> VertexId {
        *self.vertices.last().expect("paths are never empty")
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    /// True for the single-vertex path.
    pub fn is_empty(&self) -> bool {
        self.vertices.len() == 1
    }

    /// `self ⊔ other`; the shared endpoint appears once.
    pub fn concat(&self, other: &Path) -> Result<Path, GraphError> {
        if self.last() != other.first() {
            return Err(GraphError::EndpointMismatch {
                end: self.last(),
                start: other.first(),
            });
        }
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&other.vertices[1..]);
        Ok(Path { vertices })
    }

    pub fn reversed(&self) -> Path {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Path { vertices }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}
