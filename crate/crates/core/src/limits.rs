use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard caps for the exponential-time routines.
///
/// Exceeding a cap is always an error; no routine falls back to a cheaper
/// approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Limits {
    /// Pattern size for induced-subgraph containment.
    pub containment: usize,
    /// Vertex count for isomorphism testing.
    pub isomorphism: usize,
    /// Vertex count for connected-partition enumeration.
    pub enumeration: usize,
    /// Vertex count for induced long-cycle search.
    pub cycle_search: usize,
    /// Vertex count for the odd hole / antihole perfection test.
    pub perfect: usize,
    /// Vertex count for exact chromatic number.
    pub chromatic: usize,
    /// Branch-and-bound node budget for maximum clique.
    pub clique_nodes: usize,
    /// Vertex count of a constructed graph.
    pub construct_vertices: usize,
    /// Edge count of a constructed graph.
    pub construct_edges: usize,
    /// Order of the graphs in the catalog used by the general lemma.
    pub catalog_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            containment: 8,
            isomorphism: 12,
            enumeration: 12,
            cycle_search: 14,
            perfect: 12,
            chromatic: 10,
            clique_nodes: 50_000_000,
            construct_vertices: 1_000_000,
            construct_edges: 20_000_000,
            catalog_order: 4,
        }
    }
}

pub(crate) fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}
