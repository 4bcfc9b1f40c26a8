//! First connected partition with a quotient in a given class and parts
//! satisfying a given predicate.

use serde::{Deserialize, Serialize};

use super::kernel;
use crate::error::Result;
use crate::graph::Graph;
use crate::limits::{check_cap, Limits};
use crate::partition::{quotient_masks, MaskEnumerator, Partition, MASK_VERTICES_MAX};
use crate::recognition::is_perfect_rows;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuotientClass {
    Chordal,
    Perfect,
    Any,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartPredicate {
    Bipartite,
    /// No part contains `K_k`.
    CliqueFree(usize),
    /// No part has more than this many vertices.
    MaxSize(usize),
}

impl PartPredicate {
    fn holds(self, rows: &[u64], part: u64) -> bool {
        match self {
            PartPredicate::Bipartite => kernel::is_bipartite_within(rows, part),
            PartPredicate::CliqueFree(k) => !kernel::has_clique(rows, part, k),
            PartPredicate::MaxSize(m) => part.count_ones() as usize <= m,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found {
        partition: Partition,
        examined: u64,
    },
    /// Every connected partition was examined and none qualified.
    Exhausted {
        examined: u64,
    },
}

/// Scans connected partitions in restricted-growth-string order.
pub fn search_partition(
    g: &Graph,
    class: QuotientClass,
    predicate: PartPredicate,
    limits: &Limits,
) -> Result<SearchOutcome> {
    check_cap(
        "connected-partition enumeration",
        g.n(),
        limits.enumeration.min(MASK_VERTICES_MAX),
    )?;
    let rows = g.mask_rows().expect("checked against the mask ceiling");
    let mut e = MaskEnumerator::new(&rows);
    let mut examined = 0;
    while let Some(masks) = e.next_masks() {
        examined += 1;
        if !masks.iter().all(|&p| predicate.holds(&rows, p)) {
            continue;
        }
        let ok = match class {
            QuotientClass::Any => true,
            QuotientClass::Chordal => kernel::is_chordal_rows(&quotient_masks(&rows, masks)),
            QuotientClass::Perfect => is_perfect_rows(&quotient_masks(&rows, masks)),
        };
        if ok {
            return Ok(SearchOutcome::Found {
                partition: Partition::from_masks(g.n(), masks),
                examined,
            });
        }
    }
    Ok(SearchOutcome::Exhausted { examined })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{count_connected_partitions, is_connected_partition, quotient};
    use crate::recognition::is_chordal;

    #[test]
    fn trees_and_trivial_graphs() {
        let limits = Limits::default();
        // the whole vertex set comes first in enumeration order, and a tree
        // is bipartite with quotient K_1
        for g in [Graph::empty(1), Graph::path(5), Graph::star(4)] {
            match search_partition(
                &g,
                QuotientClass::Chordal,
                PartPredicate::Bipartite,
                &limits,
            )
            .unwrap()
            {
                SearchOutcome::Found {
                    partition,
                    examined,
                } => {
                    assert_eq!(examined, 1);
                    assert_eq!(partition, Partition::whole(g.n()));
                }
                other => panic!("{other:?}"),
            }
        }
        // with singleton parts forced, the tree itself is the quotient
        let g = Graph::path(5);
        match search_partition(
            &g,
            QuotientClass::Chordal,
            PartPredicate::MaxSize(1),
            &limits,
        )
        .unwrap()
        {
            SearchOutcome::Found { partition, .. } => {
                assert_eq!(partition, Partition::singletons(5))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn prism_has_a_bipartite_chordal_partition() {
        let g = Graph::prism();
        let found = search_partition(
            &g,
            QuotientClass::Chordal,
            PartPredicate::Bipartite,
            &Limits::default(),
        )
        .unwrap();
        let SearchOutcome::Found { partition, .. } = found else {
            panic!("{found:?}");
        };
        assert!(is_connected_partition(&g, &partition).unwrap());
        assert!(is_chordal(&quotient(&g, &partition).unwrap().graph)
            .unwrap()
            .is_chordal());
        for part in partition.parts() {
            assert!(part.len() <= 2 || !g.is_clique(part));
        }
    }

    #[test]
    fn exhaustion_is_reported() {
        // a part of size one everywhere leaves the 5-cycle itself as quotient
        let c5 = Graph::cycle(5);
        let out = search_partition(
            &c5,
            QuotientClass::Perfect,
            PartPredicate::MaxSize(1),
            &Limits::default(),
        )
        .unwrap();
        let all = count_connected_partitions(&c5, 12).unwrap();
        assert_eq!(out, SearchOutcome::Exhausted { examined: all });
        // edge-free parts of K_3: only the singletons, which come last
        let k3 = Graph::complete(3);
        let out = search_partition(
            &k3,
            QuotientClass::Any,
            PartPredicate::CliqueFree(2),
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(
            out,
            SearchOutcome::Found {
                partition: Partition::singletons(3),
                examined: count_connected_partitions(&k3, 12).unwrap()
            }
        );
    }
}
