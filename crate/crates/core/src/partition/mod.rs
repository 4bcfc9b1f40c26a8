//! Vertex partitions, quotient graphs, restriction to induced subgraphs, and
//! exhaustive enumeration of connected partitions.

mod enumerate;
mod outcomes;
mod restrict;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::io::parse_json;

pub use enumerate::{
    count_connected_partitions, enumerate_connected_partitions, rgs_prefixes, ConnectedPartitions,
    MaskEnumerator, MASK_VERTICES_MAX,
};
pub use outcomes::{outcome_clique_spread, outcome_part_clique};
pub use restrict::{
    check_restriction_precondition, force_restrict, restrict, PreconditionViolation, Restriction,
};

/// Disjoint non-empty vertex sets covering `0..n`, ordered by minimum member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    parts: Vec<VertexSet>,
}

impl Partition {
    pub fn new(n: usize, mut parts: Vec<VertexSet>) -> Result<Partition> {
        let mut seen = vec![false; n];
        for part in &parts {
            if part.is_empty() {
                return Err(Error::MalformedPartition("empty part".into()));
            }
            for v in part.iter() {
                if v >= n {
                    return Err(Error::MalformedPartition(format!(
                        "vertex {v} outside 0..{n}"
                    )));
                }
                if seen[v] {
                    return Err(Error::MalformedPartition(format!(
                        "vertex {v} in two parts"
                    )));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::MalformedPartition(format!("vertex {v} in no part")));
        }
        parts.sort_unstable_by_key(|p| p.min());
        Ok(Partition { n, parts })
    }

    /// Groups vertices by equal block labels.
    pub fn from_assignment(assignment: &[usize]) -> Partition {
        let mut blocks: Vec<(usize, Vec<usize>)> = Vec::new();
        for (v, &b) in assignment.iter().enumerate() {
            match blocks.iter_mut().find(|(label, _)| *label == b) {
                Some((_, members)) => members.push(v),
                None => blocks.push((b, vec![v])),
            }
        }
        Partition {
            n: assignment.len(),
            parts: blocks.into_iter().map(|(_, m)| VertexSet::new(m)).collect(),
        }
    }

    /// From part masks over at most 64 vertices.
    pub fn from_masks(n: usize, masks: &[u64]) -> Partition {
        let mut parts: Vec<VertexSet> = masks.iter().map(|&m| VertexSet::from_mask(m)).collect();
        parts.sort_unstable_by_key(|p| p.min());
        Partition { n, parts }
    }

    pub fn singletons(n: usize) -> Partition {
        Partition {
            n,
            parts: (0..n).map(|v| VertexSet::from([v])).collect(),
        }
    }

    pub fn whole(n: usize) -> Partition {
        Partition {
            n,
            parts: if n == 0 {
                vec![]
            } else {
                vec![VertexSet::full(n)]
            },
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    /// Part index of every vertex.
    pub fn part_map(&self) -> Vec<usize> {
        let mut map = vec![0; self.n];
        for (i, p) in self.parts.iter().enumerate() {
            for v in p.iter() {
                map[v] = i;
            }
        }
        map
    }

    pub fn to_masks(&self) -> Vec<u64> {
        self.parts.iter().map(VertexSet::to_mask).collect()
    }

    fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.n != g.n() {
            return Err(Error::MalformedPartition(format!(
                "partition covers {} vertices, graph has {}",
                self.n,
                g.n()
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PartitionJson {
            parts: self.parts.iter().map(|p| p.members().to_vec()).collect(),
        })
        .expect("partition serializes")
    }

    pub fn from_json(text: &str) -> Result<Partition> {
        let j: PartitionJson = parse_json(text, "partition json")?;
        let n = j.parts.iter().map(Vec::len).sum();
        Partition::new(n, j.parts.into_iter().map(VertexSet::new).collect())
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartitionJson {
    parts: Vec<Vec<usize>>,
}

/// `G/P`: one vertex per part, adjacent when some edge crosses the two parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGraph {
    pub graph: Graph,
    /// Vertex of `G` -> part index (vertex of the quotient).
    pub part_map: Vec<usize>,
}

/// True iff every part induces a connected subgraph.
pub fn is_connected_partition(g: &Graph, p: &Partition) -> Result<bool> {
    p.check_graph(g)?;
    Ok(p.parts
        .iter()
        .all(|part| g.components_within(part).len() == 1))
}

pub fn quotient(g: &Graph, p: &Partition) -> Result<QuotientGraph> {
    p.check_graph(g)?;
    let part_map = p.part_map();
    let edges = g
        .edges()
        .iter()
        .map(|&(u, v)| (part_map[u], part_map[v]))
        .filter(|(a, b)| a != b);
    let graph = Graph::new(p.len(), edges)?;
    Ok(QuotientGraph { graph, part_map })
}

/// Quotient adjacency masks for partitions of graphs on at most 64 vertices.
pub(crate) fn quotient_masks(rows: &[u64], parts: &[u64]) -> Vec<u64> {
    let reach: Vec<u64> = parts
        .iter()
        .map(|&p| crate::graph::bits(p).fold(0, |acc, v| acc | rows[v]))
        .collect();
    (0..parts.len())
        .map(|i| {
            (0..parts.len())
                .filter(|&j| j != i && reach[i] & parts[j] != 0)
                .fold(0u64, |m, j| m | 1 << j)
        })
        .collect()
}
