//! Immutable undirected simple graphs with dense vertex ids.

use std::borrow::Cow;
use std::collections::HashMap;

use crate::error::GraphError;

/// Dense 0-based vertex index, valid for the lifetime of its [`Graph`].
pub type VertexId = usize;

/// An undirected simple graph stored as sorted adjacency lists.
///
/// Built once through [`GraphBuilder`] (or [`Graph::from_edges`]) and never
/// mutated afterwards; algorithms keep their own state next to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<VertexId>>,
    m: usize,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate edges are merged, self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn empty(n: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); n],
            m: 0,
            labels: None,
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(n, edges).expect("complete graph edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    pub fn complete_bipartite(left: usize, right: usize) -> Self {
        let edges = (0..left).flat_map(|u| (0..right).map(move |v| (u, left + v)));
        Self::from_edges(left + right, edges).expect("biclique edges are valid")
    }

    /// The Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10.
    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::from_edges(10, edges).expect("petersen edges are valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, u: VertexId) -> &[VertexId] {
        &self.adjacency[u]
    }

    #[inline]
    pub fn degree(&self, u: VertexId) -> usize {
        self.adjacency[u].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, adj)| {
            adj.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The original label of `u`, or its dense id when the graph carries no labels.
    pub fn label(&self, u: VertexId) -> Cow<'_, str> {
        match &self.labels {
            Some(l) => Cow::Borrowed(l[u].as_str()),
            None => Cow::Owned(u.to_string()),
        }
    }

    /// Maps a label back to its dense id. Unlabelled graphs accept decimal ids.
    pub fn lookup(&self, label: &str) -> Option<VertexId> {
        match &self.labels {
            Some(l) => l.iter().position(|s| s == label),
            None => label.parse().ok().filter(|&u| u < self.n()),
        }
    }

    /// Index from label to id, for bulk lookups.
    pub fn label_index(&self) -> HashMap<String, VertexId> {
        self.vertices()
            .map(|u| (self.label(u).into_owned(), u))
            .collect()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n(), "one label per vertex");
        self.labels = Some(labels);
        self
    }

    /// Checks the structural invariants: symmetry, no loops, sorted and
    /// duplicate-free lists, and a consistent edge count.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut total = 0;
        for (u, adj) in self.adjacency.iter().enumerate() {
            total += adj.len();
            for w in adj.windows(2) {
                if w[0] >= w[1] {
                    return Err(format!("adjacency of {u} not strictly sorted"));
                }
            }
            for &v in adj {
                if v == u {
                    return Err(format!("self-loop at {u}"));
                }
                if v >= self.n() {
                    return Err(format!("neighbor {v} of {u} out of range"));
                }
                if self.adjacency[v].binary_search(&u).is_err() {
                    return Err(format!("edge {u}-{v} not symmetric"));
                }
            }
        }
        if total != 2 * self.m {
            return Err(format!("m = {} but degree sum is {total}", self.m));
        }
        if let Some(l) = &self.labels {
            if l.len() != self.n() {
                return Err("label count differs from n".into());
            }
        }
        Ok(())
    }
}

/// Accumulates edges, then freezes them into a [`Graph`].
#[derive(Debug, Default)]
pub struct GraphBuilder {
    adjacency: Vec<Vec<VertexId>>,
    labels: Option<Vec<String>>,
    added: usize,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); n],
            labels: None,
            added: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    /// Appends a fresh vertex and returns its id.
    pub fn add_vertex(&mut self) -> VertexId {
        self.adjacency.push(Vec::new());
        self.adjacency.len() - 1
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        self.labels = Some(labels);
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        let n = self.n();
        if u >= n {
            return Err(GraphError::VertexOutOfRange(u));
        }
        if v >= n {
            return Err(GraphError::VertexOutOfRange(v));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u.to_string()));
        }
        self.adjacency[u].push(v);
        self.adjacency[v].push(u);
        self.added += 1;
        Ok(())
    }

    /// Sorts and deduplicates. Returns the graph and the number of
    /// duplicate edges that were merged away.
    pub fn build_counting(mut self) -> (Graph, usize) {
        let mut total = 0;
        for adj in &mut self.adjacency {
            adj.sort_unstable();
            adj.dedup();
            total += adj.len();
        }
        let m = total / 2;
        let graph = Graph {
            adjacency: self.adjacency,
            m,
            labels: self.labels,
        };
        (graph, self.added - m)
    }

    pub fn build(self) -> Graph {
        self.build_counting().0
    }
}
