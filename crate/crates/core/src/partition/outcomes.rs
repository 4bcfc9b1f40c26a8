//! The two outcomes of the chordal/perfect lemmas, checked on a concrete
//! partition.

use std::ops::ControlFlow;

use crate::graph::{Graph, VertexSet};

use super::Partition;

/// A `K_{kr}` meeting exactly `r` parts of `p`, each in exactly `k`
/// vertices. Returns the first such clique in lexicographic order.
pub fn outcome_clique_spread(g: &Graph, p: &Partition, k: usize, r: usize) -> Option<VertexSet> {
    let part_of = p.part_map();
    let mut hits = vec![0usize; p.len()];
    let found = g.for_each_clique(k * r, |clique| {
        hits.iter_mut().for_each(|h| *h = 0);
        for &v in clique {
            hits[part_of[v]] += 1;
        }
        let touched = hits.iter().filter(|&&h| h > 0).count();
        if touched == r && hits.iter().all(|&h| h == 0 || h == k) {
            ControlFlow::Break(VertexSet::new(clique.to_vec()))
        } else {
            ControlFlow::Continue(())
        }
    });
    match found {
        ControlFlow::Break(c) => Some(c),
        ControlFlow::Continue(()) => None,
    }
}

/// A `K_{k+1}` inside a single part.
pub fn outcome_part_clique(g: &Graph, p: &Partition, k: usize) -> Option<VertexSet> {
    p.parts()
        .iter()
        .find_map(|part| g.find_clique_in(part, k + 1))
}
