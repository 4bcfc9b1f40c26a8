//! Tree-decompositions: validation, width, and the two composition steps used
//! by the recursive constructions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::io::parse_json;

/// A tree of bags over the vertices `0..graph_n` of some graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    graph_n: usize,
    bags: Vec<VertexSet>,
    tree_edges: Vec<(usize, usize)>,
    /// Provenance of each node.
    labels: Vec<String>,
}

/// One way a decomposition fails to be valid for a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    GraphMismatch { expected: usize, found: usize },
    EmptyTree,
    TreeEdgeOutOfRange { a: usize, b: usize },
    TreeCycle { a: usize, b: usize },
    TreeDisconnected { components: usize },
    BagVertexOutOfRange { node: usize, vertex: usize },
    VertexUncovered { vertex: usize },
    EdgeUncovered { u: usize, v: usize },
    SubtreeDisconnected { vertex: usize, pieces: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::GraphMismatch { expected, found } => {
                write!(
                    f,
                    "decomposition is over {found} vertices, graph has {expected}"
                )
            }
            Violation::EmptyTree => write!(f, "tree has no nodes"),
            Violation::TreeEdgeOutOfRange { a, b } => {
                write!(f, "tree edge ({a}, {b}) names a missing node")
            }
            Violation::TreeCycle { a, b } => write!(f, "tree edge ({a}, {b}) closes a cycle"),
            Violation::TreeDisconnected { components } => {
                write!(f, "tree has {components} components")
            }
            Violation::BagVertexOutOfRange { node, vertex } => {
                write!(f, "bag {node} holds unknown vertex {vertex}")
            }
            Violation::VertexUncovered { vertex } => write!(f, "vertex {vertex} is in no bag"),
            Violation::EdgeUncovered { u, v } => write!(f, "edge ({u}, {v}) is in no bag"),
            Violation::SubtreeDisconnected { vertex, pieces } => {
                write!(f, "bags containing vertex {vertex} form {pieces} subtrees")
            }
        }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
        ra != rb
    }
}

fn sorted_intersect(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

impl TreeDecomposition {
    /// Assembles a decomposition without checking it; see [`validate`].
    pub fn new(graph_n: usize, bags: Vec<VertexSet>, tree_edges: Vec<(usize, usize)>) -> Self {
        let labels = vec![String::new(); bags.len()];
        TreeDecomposition {
            graph_n,
            bags,
            tree_edges,
            labels,
        }
    }

    pub fn single_bag(graph_n: usize, bag: VertexSet) -> Self {
        TreeDecomposition::new(graph_n, vec![bag], Vec::new())
    }

    pub fn graph_n(&self) -> usize {
        self.graph_n
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    pub fn bag(&self, node: usize) -> &VertexSet {
        &self.bags[node]
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.tree_edges
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(VertexSet::len).max().unwrap_or(0)
    }

    /// Largest bag size minus one.
    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.bags.len() {
            return Err(Error::InvalidDecomposition(format!(
                "{} labels for {} nodes",
                labels.len(),
                self.bags.len()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Prefixes every node label with `prefix/`.
    pub fn relabeled(mut self, prefix: &str) -> Self {
        for l in &mut self.labels {
            *l = if l.is_empty() {
                prefix.to_string()
            } else {
                format!("{prefix}/{l}")
            };
        }
        self
    }

    /// Same tree with every vertex id increased by `offset`.
    pub fn shifted(&self, offset: usize) -> Self {
        TreeDecomposition {
            graph_n: self.graph_n + offset,
            bags: self.bags.iter().map(|b| b.shifted(offset)).collect(),
            tree_edges: self.tree_edges.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Smallest node whose bag contains `c`.
    pub fn bag_containing(&self, c: &VertexSet) -> Result<usize> {
        self.bags
            .iter()
            .position(|b| c.is_subset(b))
            .ok_or_else(|| Error::NoBagContains(c.members().to_vec()))
    }

    /// Attaches the decomposition `b` of a copy `B_C` (already in composite
    /// ids, disjoint from this one) for a graph where clique `c` is complete
    /// to `B_C`: one tree edge to a bag containing `c`, and `c` added to
    /// every bag of `b`.
    pub fn attach_copy(self, b: &TreeDecomposition, c: &VertexSet) -> Result<Self> {
        let at = self.bag_containing(c)?;
        self.attach_copy_at(at, b, c)
    }

    pub(crate) fn attach_copy_at(
        mut self,
        at: usize,
        b: &TreeDecomposition,
        c: &VertexSet,
    ) -> Result<Self> {
        if b.bags.is_empty() {
            return Err(Error::InvalidDecomposition(
                "attached decomposition has no nodes".into(),
            ));
        }
        self.check_disjoint(b)?;
        let offset = self.bags.len();
        for bag in &b.bags {
            self.bags.push(bag.union(c));
        }
        self.labels.extend(b.labels.iter().cloned());
        self.tree_edges
            .extend(b.tree_edges.iter().map(|&(x, y)| (x + offset, y + offset)));
        self.tree_edges.push((at, offset));
        self.graph_n = self.graph_n.max(b.graph_n);
        Ok(self)
    }

    fn check_disjoint(&self, b: &TreeDecomposition) -> Result<()> {
        let b_min = b.bags.iter().filter_map(VertexSet::min).min();
        if b_min.is_none_or(|m| m >= self.graph_n) {
            return Ok(());
        }
        let mut mine = vec![false; self.graph_n.max(b.graph_n)];
        for v in self.bags.iter().flat_map(VertexSet::iter) {
            mine[v] = true;
        }
        match b
            .bags
            .iter()
            .flat_map(VertexSet::iter)
            .find(|&v| v < mine.len() && mine[v])
        {
            Some(v) => Err(Error::IdCollision(v)),
            None => Ok(()),
        }
    }

    /// Adds a leaf with bag `gadget ∪ family_union`, attached to a bag
    /// containing the clique `family_union`.
    pub fn attach_gadget_bag(self, gadget: &VertexSet, family_union: &VertexSet) -> Result<Self> {
        let at = self.bag_containing(family_union)?;
        Ok(self.attach_gadget_bag_at(at, gadget, family_union, String::new()))
    }

    pub(crate) fn attach_gadget_bag_at(
        mut self,
        at: usize,
        gadget: &VertexSet,
        family_union: &VertexSet,
        label: String,
    ) -> Self {
        let node = self.bags.len();
        self.bags.push(gadget.union(family_union));
        self.labels.push(label);
        self.tree_edges.push((at, node));
        if let Some(m) = gadget.iter().max() {
            self.graph_n = self.graph_n.max(m + 1);
        }
        self
    }

    /// For each vertex, the nodes whose bags contain it, ascending.
    pub(crate) fn occurrences(&self) -> Vec<Vec<usize>> {
        let mut occ = vec![Vec::new(); self.graph_n];
        for (node, bag) in self.bags.iter().enumerate() {
            for v in bag.iter() {
                if v < self.graph_n {
                    occ[v].push(node);
                }
            }
        }
        occ
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DecompositionJson::from(self)).expect("decomposition serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: DecompositionJson = parse_json(text, "decomposition json")?;
        j.try_into()
    }
}

/// Checks the four tree-decomposition conditions and reports every violation.
pub fn validate(g: &Graph, t: &TreeDecomposition) -> std::result::Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    if t.graph_n != g.n() {
        out.push(Violation::GraphMismatch {
            expected: g.n(),
            found: t.graph_n,
        });
    }
    let nodes = t.bags.len();
    if nodes == 0 {
        out.push(Violation::EmptyTree);
        if g.n() > 0 {
            out.extend((0..g.n()).map(|vertex| Violation::VertexUncovered { vertex }));
        }
        return Err(out);
    }

    let mut uf = UnionFind::new(nodes);
    let mut tree_ok = true;
    for &(a, b) in &t.tree_edges {
        if a >= nodes || b >= nodes {
            out.push(Violation::TreeEdgeOutOfRange { a, b });
            tree_ok = false;
        } else if !uf.union(a, b) {
            out.push(Violation::TreeCycle { a, b });
            tree_ok = false;
        }
    }
    let components = (0..nodes).filter(|&x| uf.find(x) == x).count();
    if components != 1 {
        out.push(Violation::TreeDisconnected { components });
        tree_ok = false;
    }

    let n = g.n();
    let mut occ = vec![Vec::new(); n];
    for (node, bag) in t.bags.iter().enumerate() {
        for v in bag.iter() {
            if v >= n {
                out.push(Violation::BagVertexOutOfRange { node, vertex: v });
            } else {
                occ[v].push(node);
            }
        }
    }
    for (vertex, o) in occ.iter().enumerate() {
        if o.is_empty() {
            out.push(Violation::VertexUncovered { vertex });
        }
    }
    for &(u, v) in g.edges() {
        if !sorted_intersect(&occ[u], &occ[v]) {
            out.push(Violation::EdgeUncovered { u, v });
        }
    }
    if tree_ok {
        // in a tree, k nodes span a connected subtree iff they induce k-1 edges
        let mut inner = vec![0usize; n];
        for &(a, b) in &t.tree_edges {
            for v in t.bags[a].iter() {
                if v < n && t.bags[b].contains(v) {
                    inner[v] += 1;
                }
            }
        }
        for vertex in 0..n {
            let k = occ[vertex].len();
            if k > 0 && inner[vertex] + 1 != k {
                out.push(Violation::SubtreeDisconnected {
                    vertex,
                    pieces: k - inner[vertex],
                });
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeJson {
    id: usize,
    label: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DecompositionJson {
    graph_n: usize,
    nodes: Vec<NodeJson>,
    tree_edges: Vec<[usize; 2]>,
    bags: Vec<Vec<usize>>,
}

impl From<&TreeDecomposition> for DecompositionJson {
    fn from(t: &TreeDecomposition) -> Self {
        DecompositionJson {
            graph_n: t.graph_n,
            nodes: t
                .labels
                .iter()
                .enumerate()
                .map(|(id, l)| NodeJson {
                    id,
                    label: l.clone(),
                })
                .collect(),
            tree_edges: t.tree_edges.iter().map(|&(a, b)| [a, b]).collect(),
            bags: t.bags.iter().map(|b| b.members().to_vec()).collect(),
        }
    }
}

impl TryFrom<DecompositionJson> for TreeDecomposition {
    type Error = Error;

    fn try_from(j: DecompositionJson) -> Result<Self> {
        if j.nodes.len() != j.bags.len() {
            return Err(Error::InvalidDecomposition(format!(
                "{} nodes but {} bags",
                j.nodes.len(),
                j.bags.len()
            )));
        }
        if let Some((i, node)) = j.nodes.iter().enumerate().find(|(i, n)| n.id != *i) {
            return Err(Error::InvalidDecomposition(format!(
                "node at position {i} has id {}",
                node.id
            )));
        }
        for bag in &j.bags {
            if bag.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidDecomposition(format!(
                    "bag {bag:?} is not strictly ascending"
                )));
            }
        }
        Ok(TreeDecomposition {
            graph_n: j.graph_n,
            bags: j.bags.into_iter().map(VertexSet::new).collect(),
            tree_edges: j.tree_edges.into_iter().map(|[a, b]| (a, b)).collect(),
            labels: j.nodes.into_iter().map(|n| n.label).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3_decomp() -> TreeDecomposition {
        TreeDecomposition::new(3, vec![[0, 1].into(), [1, 2].into()], vec![(0, 1)])
    }

    #[test]
    fn validate_examples() {
        let g = Graph::prism();
        let t = TreeDecomposition::single_bag(6, VertexSet::full(6));
        assert_eq!(validate(&g, &t), Ok(()));

        let p3 = Graph::path(3);
        assert_eq!(validate(&p3, &p3_decomp()), Ok(()));
        assert_eq!(p3_decomp().width(), 1);

        let k3 = Graph::complete(3);
        let bad = TreeDecomposition::new(3, vec![[0, 1].into(), [1, 2].into()], vec![(0, 1)]);
        assert_eq!(
            validate(&k3, &bad),
            Err(vec![Violation::EdgeUncovered { u: 0, v: 2 }])
        );
    }

    #[test]
    fn validate_reports_everything() {
        let g = Graph::path(4);
        // 0-1-2-3 with bags {0,1} {2,3} {1,2} {9} arranged badly
        let t = TreeDecomposition::new(
            4,
            vec![[0, 1].into(), [2, 3].into(), [1].into(), [9].into()],
            vec![(0, 1), (1, 2)],
        );
        let v = validate(&g, &t).unwrap_err();
        assert!(v.contains(&Violation::TreeDisconnected { components: 2 }));
        assert!(v.contains(&Violation::BagVertexOutOfRange { node: 3, vertex: 9 }));
        assert!(v.contains(&Violation::EdgeUncovered { u: 1, v: 2 }));

        let t = TreeDecomposition::new(
            4,
            vec![[0, 1].into(), [2, 3].into(), [1, 2].into()],
            vec![(0, 1), (1, 2)],
        );
        assert_eq!(
            validate(&g, &t),
            Err(vec![Violation::SubtreeDisconnected {
                vertex: 1,
                pieces: 2
            }])
        );

        let t = TreeDecomposition::new(3, vec![[0, 1].into(), [1, 2].into()], vec![(0, 1), (1, 0)]);
        assert_eq!(
            validate(&Graph::path(3), &t),
            Err(vec![Violation::TreeCycle { a: 1, b: 0 }])
        );
        let t = TreeDecomposition::new(2, vec![[0].into()], vec![]);
        assert_eq!(
            validate(&Graph::path(3), &t),
            Err(vec![
                Violation::GraphMismatch {
                    expected: 3,
                    found: 2
                },
                Violation::VertexUncovered { vertex: 1 },
                Violation::VertexUncovered { vertex: 2 },
                Violation::EdgeUncovered { u: 0, v: 1 },
                Violation::EdgeUncovered { u: 1, v: 2 },
            ])
        );
    }

    #[test]
    fn width_examples() {
        assert_eq!(
            TreeDecomposition::single_bag(6, VertexSet::full(6)).width(),
            5
        );
        assert_eq!(p3_decomp().width(), 1);
    }

    #[test]
    fn bag_containing_examples() {
        let t = TreeDecomposition::single_bag(3, VertexSet::full(3));
        assert_eq!(t.bag_containing(&[0, 2].into()), Ok(0));
        assert_eq!(p3_decomp().bag_containing(&[1, 2].into()), Ok(1));
        assert_eq!(p3_decomp().bag_containing(&[1].into()), Ok(0));
        assert_eq!(
            p3_decomp().bag_containing(&[0, 2].into()),
            Err(Error::NoBagContains(vec![0, 2]))
        );
    }

    #[test]
    fn attach_copy_examples() {
        let a = TreeDecomposition::single_bag(1, [0].into());
        let b = TreeDecomposition::single_bag(2, [1].into());
        let t = a.attach_copy(&b, &[0].into()).unwrap();
        assert_eq!(t.bags(), &[[0].into(), [0, 1].into()]);
        assert_eq!(validate(&Graph::complete(2), &t), Ok(()));

        // K_3 with a K_3 copy complete to edge {0,1}
        let a = TreeDecomposition::single_bag(3, [0, 1, 2].into());
        let b = TreeDecomposition::single_bag(3, [0, 1, 2].into()).shifted(3);
        let t = a.attach_copy(&b, &[0, 1].into()).unwrap();
        assert_eq!(t.max_bag_size(), 5);
        let mut edges = vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)];
        for c in [0, 1] {
            for x in 3..6 {
                edges.push((c, x));
            }
        }
        assert_eq!(validate(&Graph::new(6, edges).unwrap(), &t), Ok(()));
    }

    #[test]
    fn attach_copy_rejects_collisions() {
        let a = TreeDecomposition::single_bag(3, [0, 1, 2].into());
        let b = TreeDecomposition::single_bag(3, [2].into());
        assert_eq!(a.attach_copy(&b, &[0].into()), Err(Error::IdCollision(2)));
    }

    #[test]
    fn attach_gadget_examples() {
        let a = TreeDecomposition::single_bag(1, [0].into());
        let t = a.attach_gadget_bag(&[1].into(), &[0].into()).unwrap();
        assert_eq!(t.bag(1), &VertexSet::from([0, 1]));
        assert_eq!(t.tree_edges(), &[(0, 1)]);
        assert_eq!(t.graph_n(), 2);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let t = p3_decomp().relabeled("root");
        let s = t.to_json();
        assert_eq!(
            s,
            r#"{"graph_n":3,"nodes":[{"id":0,"label":"root"},{"id":1,"label":"root"}],"tree_edges":[[0,1]],"bags":[[0,1],[1,2]]}"#
        );
        let back = TreeDecomposition::from_json(&s).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_json(), s);
        assert!(TreeDecomposition::from_json(
            r#"{"graph_n":1,"nodes":[],"tree_edges":[],"bags":[[0]]}"#
        )
        .is_err());
    }
}
