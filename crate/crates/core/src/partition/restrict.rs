//! Restricting a partition to an induced subgraph `X`.
//!
//! When the neighbourhood of every component of `G - X` is a clique, the
//! restriction of a connected partition is connected, and its quotient is the
//! subgraph of `G/P` induced by the parts meeting `X`.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

use super::{is_connected_partition, quotient, Partition};

/// A component of `G - X` whose neighbourhood in `X` is not a clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreconditionViolation {
    pub component: VertexSet,
    /// Two non-adjacent members of `N(component) ∩ X`.
    pub u: usize,
    pub v: usize,
}

impl From<PreconditionViolation> for Error {
    fn from(p: PreconditionViolation) -> Self {
        Error::RestrictionPrecondition {
            component: p.component.into_vec(),
            u: p.u,
            v: p.v,
        }
    }
}

pub fn check_restriction_precondition(
    g: &Graph,
    x: &VertexSet,
) -> Result<std::result::Result<(), PreconditionViolation>> {
    if x.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    g.check_set(x)?;
    let outside: VertexSet = (0..g.n()).filter(|&v| !x.contains(v)).collect();
    let mut in_x = vec![false; g.n()];
    for v in x.iter() {
        in_x[v] = true;
    }
    for component in g.components_within(&outside) {
        let nbhd: VertexSet = component
            .iter()
            .flat_map(|v| g.neighbors(v).iter().copied())
            .filter(|&w| in_x[w])
            .collect();
        let m = nbhd.members();
        for (i, &u) in m.iter().enumerate() {
            if let Some(&v) = m[i + 1..].iter().find(|&&v| !g.has_edge(u, v)) {
                return Ok(Err(PreconditionViolation { component, u, v }));
            }
        }
    }
    Ok(Ok(()))
}

/// `P|X` together with the bookkeeping that relates it back to `G` and `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    /// `G[X]`.
    pub graph: Graph,
    /// Vertex of `G[X]` -> vertex of `G`.
    pub vertex_map: Vec<usize>,
    /// Partition of `G[X]`.
    pub partition: Partition,
    /// Part of the restriction -> index of the part of `P` it came from.
    pub part_origin: Vec<usize>,
    /// Set when the precondition was not checked.
    pub unchecked: bool,
}

/// `P|X`, refusing when some component of `G - X` has a non-clique
/// neighbourhood.
pub fn restrict(g: &Graph, p: &Partition, x: &VertexSet) -> Result<Restriction> {
    check_restriction_precondition(g, x)??;
    let r = traces(g, p, x, false)?;
    debug_assert!(
        !is_connected_partition(g, p)? || lemma_holds(g, p, &r)?,
        "restriction of a connected partition is not connected or its quotient differs"
    );
    Ok(r)
}

/// `P|X` without the precondition check. The result is flagged `unchecked`;
/// it exists for experiments that deliberately break the hypothesis.
pub fn force_restrict(g: &Graph, p: &Partition, x: &VertexSet) -> Result<Restriction> {
    if x.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    g.check_set(x)?;
    traces(g, p, x, true)
}

fn traces(g: &Graph, p: &Partition, x: &VertexSet, unchecked: bool) -> Result<Restriction> {
    p.check_graph(g)?;
    let (graph, vertex_map) = g.induced_subgraph(x)?;
    let mut parts = Vec::new();
    let mut origin = Vec::new();
    for (i, part) in p.parts().iter().enumerate() {
        // new id of old vertex v is its rank in X
        let trace: Vec<usize> = part
            .iter()
            .filter_map(|v| vertex_map.binary_search(&v).ok())
            .collect();
        if !trace.is_empty() {
            parts.push(VertexSet::new(trace));
            origin.push(i);
        }
    }
    // parts of P are sorted by minimum, and ranks preserve order only within X,
    // so re-sort both vectors together
    let mut paired: Vec<_> = parts.into_iter().zip(origin).collect();
    paired.sort_unstable_by_key(|(s, _)| s.min());
    let (parts, part_origin): (Vec<_>, Vec<_>) = paired.into_iter().unzip();
    let partition = Partition::new(graph.n(), parts)?;
    Ok(Restriction {
        graph,
        vertex_map,
        partition,
        part_origin,
        unchecked,
    })
}

/// Both conclusions, compared label-for-label: the restriction is connected
/// and its quotient equals `G/P` induced on `part_origin`.
pub(crate) fn lemma_holds(g: &Graph, p: &Partition, r: &Restriction) -> Result<bool> {
    if !is_connected_partition(&r.graph, &r.partition)? {
        return Ok(false);
    }
    let full = quotient(g, p)?.graph;
    let (induced, _) = full.induced_subgraph(&VertexSet::new(r.part_origin.clone()))?;
    let local = quotient(&r.graph, &r.partition)?.graph;
    // induced_subgraph numbers parts by ascending origin; map local parts the same way
    let mut rank: Vec<usize> = (0..r.part_origin.len()).collect();
    rank.sort_unstable_by_key(|&i| r.part_origin[i]);
    let mut pos = vec![0; rank.len()];
    for (new, &old) in rank.iter().enumerate() {
        pos[old] = new;
    }
    let relabelled = Graph::new(
        local.n(),
        local.edges().iter().map(|&(a, b)| (pos[a], pos[b])),
    )?;
    Ok(relabelled == induced.without_labels())
}
