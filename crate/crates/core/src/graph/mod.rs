//! Immutable simple undirected graphs on dense vertex ids `0..n`.

mod bits;
mod cliques;
mod iso;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bits::bits;
pub(crate) use bits::BitMatrix;
pub use iso::{are_isomorphic, contains_induced, find_isomorphism};

/// Graphs up to this order also keep a dense adjacency matrix.
pub const DENSE_ROWS_MAX: usize = 4096;

/// A sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    /// All ids `0..n`.
    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn from_mask(mask: u64) -> Self {
        VertexSet(bits(mask).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn min(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        !self.0.iter().any(|&v| other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(
            self.0
                .iter()
                .copied()
                .filter(|&v| other.contains(v))
                .collect(),
        )
    }

    /// Bit mask of the members; every member must be below 64.
    pub fn to_mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &v| {
            debug_assert!(v < 64);
            m | 1 << v
        })
    }

    pub(crate) fn shifted(&self, offset: usize) -> VertexSet {
        VertexSet(self.0.iter().map(|&v| v + offset).collect())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::new(v)
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        VertexSet::new(v.to_vec())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Simple undirected graph with optional per-vertex provenance labels.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    /// `(u, v)` with `u < v`, sorted.
    edges: Vec<(usize, usize)>,
    rows: Option<BitMatrix>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph, collapsing duplicate edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        Ok(Graph::from_canonical_edges(n, list))
    }

    fn from_canonical_edges(n: usize, edges: Vec<(usize, usize)>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let rows = (n <= DENSE_ROWS_MAX).then(|| {
            let mut m = BitMatrix::new(n);
            for &(u, v) in &edges {
                m.set(u, v);
                m.set(v, u);
            }
            m
        });
        Graph {
            n,
            adj,
            edges,
            rows,
            labels: None,
        }
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_canonical_edges(n, Vec::new())
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::from_canonical_edges(n, edges)
    }

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    /// The cycle `C_n`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are valid")
    }

    /// `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star edges are valid")
    }

    /// Triangular prism: triangles `{0,1,2}` and `{3,4,5}` joined by `i ~ i+3`.
    pub fn prism() -> Graph {
        Graph::new(
            6,
            [
                (0, 1),
                (1, 2),
                (0, 2),
                (3, 4),
                (4, 5),
                (3, 5),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        )
        .expect("prism edges are valid")
    }

    /// Attaches one label per vertex.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.n {
            return Err(Error::LabelCount {
                got: labels.len(),
                n: self.n,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Graph {
        self.labels = None;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match &self.rows {
            Some(m) => m.get(u, v),
            None => self.adj[u].binary_search(&v).is_ok(),
        }
    }

    /// Adjacency as one `u64` mask per vertex; `None` above 64 vertices.
    pub fn mask_rows(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        Some(
            (0..self.n)
                .map(|v| self.adj[v].iter().fold(0u64, |m, &w| m | 1 << w))
                .collect(),
        )
    }

    /// Builds a graph from `u64` adjacency masks (at most 64 vertices).
    pub fn from_mask_rows(rows: &[u64]) -> Graph {
        let n = rows.len();
        let mut edges = Vec::new();
        for (u, &row) in rows.iter().enumerate() {
            for v in bits(row >> u >> 1) {
                edges.push((u, u + 1 + v));
            }
        }
        Graph::from_canonical_edges(n, edges)
    }

    pub(crate) fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.iter().find(|&v| v >= self.n) {
            Some(vertex) => Err(Error::NotAVertex { vertex, n: self.n }),
            None => Ok(()),
        }
    }

    /// `G[S]`, with vertex `i` of the result being the `i`-th smallest member
    /// of `S`. The returned vector maps new ids back to old ones.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        if s.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        self.check_set(s)?;
        let back = s.members().to_vec();
        let mut fwd = vec![usize::MAX; self.n];
        for (i, &v) in back.iter().enumerate() {
            fwd[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in back.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = fwd[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        edges.sort_unstable();
        let mut g = Graph::from_canonical_edges(back.len(), edges);
        if let Some(labels) = &self.labels {
            g.labels = Some(back.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok((g, back))
    }

    /// Connected components, each sorted, ordered by minimum id.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(&VertexSet::full(self.n))
    }

    /// Components of `G[S]`, reported in the ids of `G`.
    pub fn components_within(&self, s: &VertexSet) -> Vec<VertexSet> {
        let mut inside = vec![false; self.n];
        for v in s.iter() {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in s.iter() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if inside[w] && !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            out.push(VertexSet::new(comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// True iff every pair of `S` is adjacent.
    pub fn is_clique(&self, s: &VertexSet) -> bool {
        let m = s.members();
        m.iter()
            .enumerate()
            .all(|(i, &u)| m[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Same vertex set, complementary adjacency. Labels are kept.
    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        let mut g = Graph::from_canonical_edges(self.n, edges);
        g.labels = self.labels.clone();
        g
    }

    /// Disjoint union with `other` appended after this graph's vertices.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        Graph::from_canonical_edges(self.n + other.n, edges)
    }
}
