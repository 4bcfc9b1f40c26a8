//! Every graph on `t` vertices, one per isomorphism class.

use crate::error::Result;
use crate::graph::{are_isomorphic, Graph};
use crate::limits::check_cap;

/// One representative per class, ordered by edge count and then by edge
/// mask, so the order is fixed.
pub fn graphs_of_order(t: usize, cap: usize) -> Result<Vec<Graph>> {
    check_cap("catalog order", t, cap.min(6))?;
    let pairs: Vec<(usize, usize)> = (0..t)
        .flat_map(|u| (u + 1..t).map(move |v| (u, v)))
        .collect();
    let mut all: Vec<(u32, u64)> = (0..1u64 << pairs.len())
        .map(|m| (m.count_ones(), m))
        .collect();
    all.sort_unstable();
    let mut reps: Vec<Graph> = Vec::new();
    for (_, mask) in all {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        let g = Graph::new(t, edges)?;
        let mut fresh = true;
        for h in reps.iter().filter(|h| h.edge_count() == g.edge_count()) {
            if are_isomorphic(&g, h, t)? {
                fresh = false;
                break;
            }
        }
        if fresh {
            reps.push(g);
        }
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        // graphs up to isomorphism on 0..=5 vertices
        for (t, want) in [(0, 1), (1, 1), (2, 2), (3, 4), (4, 11), (5, 34)] {
            assert_eq!(graphs_of_order(t, 6).unwrap().len(), want, "t = {t}");
        }
        assert!(graphs_of_order(5, 4).is_err());
    }
}
