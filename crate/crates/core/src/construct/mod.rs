//! The three recursive counterexample families, built together with tree
//! decompositions whose width stays under the stated bounds.
//!
//! Vertex ids are handed out depth-first: the base graph `A` keeps its ids
//! and every attached block follows in attachment order. Labels record the
//! path through the construction, e.g. `A/fam3/gadget/2`.

mod bounds;
mod families;
mod profile;

use std::collections::HashMap;
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::decomposition::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::limits::Limits;

pub use bounds::{integer_cube_root, s_bound, t_bound, theorem_clique_order, Family};
pub use families::{enumerate_clique_families, for_each_clique_family, CliqueFamily};
pub use profile::{predict_size, SizePrediction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub family: Family,
    pub k: u64,
    pub r: u64,
    /// Quotient order, general family only.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<u64>,
}

impl Params {
    pub fn chordal(k: u64, r: u64) -> Params {
        Params {
            family: Family::Chordal,
            k,
            r,
            t: None,
        }
    }

    pub fn perfect(k: u64, r: u64) -> Params {
        Params {
            family: Family::Perfect,
            k,
            r,
            t: None,
        }
    }

    pub fn general(k: u64, t: u64, r: u64) -> Params {
        Params {
            family: Family::General,
            k,
            r,
            t: Some(t),
        }
    }

    fn check(&self) -> Result<()> {
        let t_ok = match (self.family, self.t) {
            (Family::General, Some(t)) => t >= 1,
            (Family::General, None) => false,
            (_, t) => t.is_none(),
        };
        if self.k == 0 || self.r == 0 || !t_ok {
            return Err(Error::InvalidParameters(format!("{self}")));
        }
        Ok(())
    }

    /// Largest bag size the decomposition may use; none for the general family.
    pub fn bag_bound(&self) -> Option<u64> {
        match self.family {
            Family::Chordal => s_bound(self.k, self.r).ok(),
            Family::Perfect => t_bound(self.k, self.r).ok(),
            Family::General => None,
        }
    }

    pub fn predict(&self, vertex_cap: usize, edge_cap: usize) -> SizePrediction {
        predict_size(
            self.family,
            self.k,
            self.t.unwrap_or(0),
            self.r,
            vertex_cap,
            edge_cap,
        )
    }
}

impl std::fmt::Display for Params {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.t {
            Some(t) => write!(
                f,
                "{}(k={}, t={}, r={})",
                self.family.name(),
                self.k,
                t,
                self.r
            ),
            None => write!(f, "{}(k={}, r={})", self.family.name(), self.k, self.r),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttachmentKind {
    /// A copy of the previous graph made complete to one clique.
    Copy,
    /// A gadget attached at a clique family.
    Gadget,
}

/// One block added on top of the base graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attachment {
    pub kind: AttachmentKind,
    /// The clique (copy) or the family's cliques in canonical order (gadget).
    pub sites: Vec<VertexSet>,
    /// Ids of the added vertices.
    pub attached: VertexSet,
}

#[derive(Debug, Clone)]
pub struct ConstructionResult {
    pub graph: Graph,
    /// Absent for the general family.
    pub decomposition: Option<TreeDecomposition>,
    pub params: Params,
    pub predicted_size: usize,
    /// Top-level attachments only; nested steps are visible through labels.
    pub attachment_log: Vec<Attachment>,
}

#[derive(Debug)]
struct Built {
    n: usize,
    edges: Vec<(usize, usize)>,
    labels: Vec<String>,
    decomposition: Option<TreeDecomposition>,
    log: Vec<Attachment>,
}

impl Built {
    fn complete(r: usize, with_decomposition: bool) -> Built {
        let edges = (0..r)
            .flat_map(|u| (u + 1..r).map(move |v| (u, v)))
            .collect();
        let decomposition = with_decomposition.then(|| {
            TreeDecomposition::single_bag(r, VertexSet::full(r))
                .with_labels(vec![format!("K{r}")])
                .expect("one label")
        });
        Built {
            n: r,
            edges,
            labels: (0..r).map(|i| format!("v{i}")).collect(),
            decomposition,
            log: Vec::new(),
        }
    }

    fn graph(&self) -> Graph {
        Graph::new(self.n, self.edges.iter().copied())
            .and_then(|g| g.with_labels(self.labels.clone()))
            .expect("construction emits valid edges")
    }

    /// Starts a composite whose base is `self`, labels prefixed with `A/`.
    fn as_base(&self) -> Built {
        Built {
            n: self.n,
            edges: self.edges.clone(),
            labels: self.labels.iter().map(|l| format!("A/{l}")).collect(),
            decomposition: self.decomposition.clone().map(|t| t.relabeled("A")),
            log: Vec::new(),
        }
    }

    /// Appends a shifted copy of `b`; returns the id offset.
    fn append(&mut self, b: &Built, prefix: &str) -> usize {
        let off = self.n;
        self.edges
            .extend(b.edges.iter().map(|&(u, v)| (u + off, v + off)));
        self.labels
            .extend(b.labels.iter().map(|l| format!("{prefix}/{l}")));
        self.n += b.n;
        off
    }
}

/// Node of `t` (smallest id) whose bag contains `c`, through an occurrence
/// index of `t`'s vertices.
fn node_containing(t: &TreeDecomposition, occ: &[Vec<usize>], c: &VertexSet) -> Result<usize> {
    let first = c.min().ok_or(Error::EmptyVertexSet)?;
    occ[first]
        .iter()
        .copied()
        .find(|&node| c.is_subset(t.bag(node)))
        .ok_or_else(|| Error::NoBagContains(c.members().to_vec()))
}

type Key = (Family, u64, u64, u64);

struct Builder {
    memo: HashMap<Key, Rc<Built>>,
}

impl Builder {
    fn get(&mut self, key: Key) -> Result<Rc<Built>> {
        if let Some(b) = self.memo.get(&key) {
            return Ok(b.clone());
        }
        let built = Rc::new(self.make(key)?);
        self.memo.insert(key, built.clone());
        Ok(built)
    }

    fn make(&mut self, (family, k, t, r): Key) -> Result<Built> {
        let tracked = family != Family::General;
        if family == Family::General && t == 1 {
            return Ok(Built::complete(1, false));
        }
        if k == 1 {
            return Ok(Built::complete(r as usize, tracked));
        }
        if r > 1 {
            let a = self.get((family, k, t, 1))?;
            return copy_chain(&a, k as usize, r);
        }
        match family {
            Family::General => {
                let b = self.get((family, k, t - 1, 1))?;
                let slots = u32::try_from(b.n)
                    .ok()
                    .and_then(|n| 1u64.checked_shl(n))
                    .unwrap_or(u64::MAX);
                let a = self.get((family, k - 1, t, slots))?;
                subset_gadgets(&a, &b, k as usize - 1, slots)
            }
            _ => {
                let m = if family == Family::Perfect {
                    2 * k + 1
                } else {
                    k + 1
                };
                let a = self.get((family, k - 1, 0, m))?;
                clique_gadgets(&a, family, k as usize)
            }
        }
    }
}

/// `G(r)` from `A = G(1)`: `A` plus, at each `k`-clique of `A`, a copy of
/// `G(r-1)` complete to that clique. Iterative so long chains stay shallow.
fn copy_chain(a: &Built, k: usize, r: u64) -> Result<Built> {
    let a_graph = a.graph();
    let cliques = a_graph.enumerate_cliques(k);
    let occ = a.decomposition.as_ref().map(TreeDecomposition::occurrences);
    let mut prev: Option<Built> = None;
    if cliques.is_empty() {
        return Ok(a.as_base_unprefixed());
    }
    for _ in 2..=r {
        let b = prev.as_ref().unwrap_or(a);
        let mut out = a.as_base();
        for (i, c) in cliques.iter().enumerate() {
            let prefix = format!("copy{i}");
            let off = out.append(b, &prefix);
            for v in off..out.n {
                out.edges.extend(c.iter().map(|u| (u, v)));
            }
            if let (Some(t), Some(tb), Some(occ)) =
                (out.decomposition.take(), &b.decomposition, &occ)
            {
                let at = node_containing(a.decomposition.as_ref().expect("tracked"), occ, c)?;
                out.decomposition =
                    Some(t.attach_copy_at(at, &tb.shifted(off).relabeled(&prefix), c)?);
            }
            out.log.push(Attachment {
                kind: AttachmentKind::Copy,
                sites: vec![c.clone()],
                attached: (off..out.n).collect(),
            });
        }
        prev = Some(out);
    }
    Ok(prev.unwrap_or_else(|| a.as_base_unprefixed()))
}

impl Built {
    fn as_base_unprefixed(&self) -> Built {
        Built {
            n: self.n,
            edges: self.edges.clone(),
            labels: self.labels.clone(),
            decomposition: self.decomposition.clone(),
            log: self.log.clone(),
        }
    }
}

/// `G(k,1)`: one gadget per family of disjoint `(k-1)`-cliques, the gadget's
/// `i`-th vertex complete to the family's `i`-th clique. The chordal gadget
/// is `K_{k+1}`; the perfect one is two `K_{k+1}` sharing their `(k+1)`-th
/// and first vertex respectively.
fn clique_gadgets(a: &Built, family: Family, k: usize) -> Result<Built> {
    let (m, gadget_edges): (usize, Vec<(usize, usize)>) = match family {
        Family::Perfect => {
            let m = 2 * k + 1;
            let first = (0..=k).flat_map(|u| (u + 1..=k).map(move |v| (u, v)));
            let second = (k..m).flat_map(|u| (u + 1..m).map(move |v| (u, v)));
            (m, first.chain(second).collect())
        }
        _ => {
            let m = k + 1;
            (
                m,
                (0..m)
                    .flat_map(|u| (u + 1..m).map(move |v| (u, v)))
                    .collect(),
            )
        }
    };
    let a_graph = a.graph();
    let occ = a.decomposition.as_ref().map(TreeDecomposition::occurrences);
    let mut out = a.as_base();
    for (i, fam) in enumerate_clique_families(&a_graph, k - 1, m)
        .into_iter()
        .enumerate()
    {
        let off = out.n;
        out.n += m;
        out.labels
            .extend((0..m).map(|j| format!("fam{i}/gadget/{j}")));
        out.edges
            .extend(gadget_edges.iter().map(|&(u, v)| (u + off, v + off)));
        for (j, c) in fam.cliques.iter().enumerate() {
            out.edges.extend(c.iter().map(|u| (u, off + j)));
        }
        let gadget: VertexSet = (off..off + m).collect();
        if let (Some(t), Some(occ)) = (out.decomposition.take(), &occ) {
            let at = node_containing(a.decomposition.as_ref().expect("tracked"), occ, &fam.union)?;
            out.decomposition =
                Some(t.attach_gadget_bag_at(at, &gadget, &fam.union, format!("fam{i}/gadget")));
        }
        out.log.push(Attachment {
            kind: AttachmentKind::Gadget,
            sites: fam.cliques,
            attached: gadget,
        });
    }
    Ok(out)
}

/// General `G(k,t,1)`: for each family of `2^n` disjoint `q`-cliques of `A`
/// a copy of `B` (`n = |V(B)|`), the `i`-th clique complete to the vertices
/// of the copy in the `i`-th subset of `V(B)` (bit `u` of `i` = vertex `u`).
fn subset_gadgets(a: &Built, b: &Built, q: usize, slots: u64) -> Result<Built> {
    let mut out = a.as_base();
    let Ok(m) = usize::try_from(slots) else {
        return Ok(out);
    };
    if slots == u64::MAX {
        return Ok(out);
    }
    let a_graph = a.graph();
    for (i, fam) in enumerate_clique_families(&a_graph, q, m)
        .into_iter()
        .enumerate()
    {
        let off = out.append(b, &format!("fam{i}"));
        for (s, c) in fam.cliques.iter().enumerate() {
            for u in (0..b.n).filter(|&u| s >> u & 1 == 1) {
                out.edges.extend(c.iter().map(|w| (w, off + u)));
            }
        }
        out.log.push(Attachment {
            kind: AttachmentKind::Gadget,
            sites: fam.cliques,
            attached: (off..out.n).collect(),
        });
    }
    Ok(out)
}

/// Edge ceiling that still applies to forced builds.
pub const FORCED_EDGE_CAP: usize = 1 << 40;

/// Builds the requested family member. The predicted vertex and edge counts
/// are checked against `limits.construct_vertices` and
/// `limits.construct_edges` first; `force` lifts both caps.
pub fn build(params: Params, limits: &Limits, force: bool) -> Result<ConstructionResult> {
    params.check()?;
    let (cap, edge_cap) = if force {
        (usize::MAX, FORCED_EDGE_CAP)
    } else {
        (limits.construct_vertices, limits.construct_edges)
    };
    let prediction = params.predict(cap, edge_cap);
    if let Some((what, predicted, cap)) = prediction.exceeded(cap, edge_cap) {
        return Err(Error::SizeRefused {
            what,
            predicted: predicted.to_string(),
            exact: prediction.exact,
            cap,
        });
    }
    let predicted_size = prediction.vertices as usize;
    let mut builder = Builder {
        memo: HashMap::new(),
    };
    let key = (params.family, params.k, params.t.unwrap_or(0), params.r);
    let built = builder.get(key)?;
    drop(builder);
    let built = Rc::try_unwrap(built).unwrap_or_else(|rc| rc.as_base_unprefixed());
    let graph = built.graph();
    debug_assert_eq!(graph.n(), predicted_size);
    Ok(ConstructionResult {
        graph,
        decomposition: built.decomposition,
        params,
        predicted_size,
        attachment_log: built.log,
    })
}

pub fn build_chordal(k: u64, r: u64) -> Result<ConstructionResult> {
    build(Params::chordal(k, r), &Limits::default(), false)
}

pub fn build_perfect(k: u64, r: u64) -> Result<ConstructionResult> {
    build(Params::perfect(k, r), &Limits::default(), false)
}

pub fn build_general(k: u64, t: u64, r: u64) -> Result<ConstructionResult> {
    build(Params::general(k, t, r), &Limits::default(), false)
}
