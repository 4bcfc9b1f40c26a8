//! Families of `m` disjoint `q`-cliques whose union is itself a clique.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};

/// `m` pairwise disjoint `q`-cliques, ordered by minimum member, together
/// with their union (a `qm`-clique).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CliqueFamily {
    pub cliques: Vec<VertexSet>,
    pub union: VertexSet,
}

/// Splits of `members` into unordered blocks of size `q`: the block holding
/// the smallest unused member is always chosen first, so each split appears
/// exactly once and blocks come out ordered by minimum.
fn splits(members: &[usize], q: usize, visit: &mut impl FnMut(&[Vec<usize>])) {
    fn go(
        members: &[usize],
        used: &mut [bool],
        q: usize,
        blocks: &mut Vec<Vec<usize>>,
        visit: &mut impl FnMut(&[Vec<usize>]),
    ) {
        let Some(first) = used.iter().position(|&u| !u) else {
            visit(blocks);
            return;
        };
        used[first] = true;
        let mut block = vec![members[first]];
        pick(members, used, q, first + 1, &mut block, blocks, visit);
        used[first] = false;
    }

    fn pick(
        members: &[usize],
        used: &mut [bool],
        q: usize,
        from: usize,
        block: &mut Vec<usize>,
        blocks: &mut Vec<Vec<usize>>,
        visit: &mut impl FnMut(&[Vec<usize>]),
    ) {
        if block.len() == q {
            blocks.push(block.clone());
            go(members, used, q, blocks, visit);
            blocks.pop();
            return;
        }
        for i in from..members.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            block.push(members[i]);
            pick(members, used, q, i + 1, block, blocks, visit);
            block.pop();
            used[i] = false;
        }
    }

    let mut used = vec![false; members.len()];
    go(members, &mut used, q, &mut Vec::new(), visit);
}

/// Visits every clique family of `m` disjoint `q`-cliques in `g`, ordered by
/// union (lexicographic) and then by split order.
pub fn for_each_clique_family<B>(
    g: &Graph,
    q: usize,
    m: usize,
    mut visit: impl FnMut(CliqueFamily) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if q == 0 || m == 0 {
        return ControlFlow::Continue(());
    }
    g.for_each_clique(q * m, |union| {
        let mut out = ControlFlow::Continue(());
        splits(union, q, &mut |blocks| {
            if out.is_continue() {
                out = visit(CliqueFamily {
                    cliques: blocks.iter().map(|b| VertexSet::new(b.clone())).collect(),
                    union: VertexSet::new(union.to_vec()),
                });
            }
        });
        out
    })
}

/// Every family, each exactly once; see [`for_each_clique_family`].
pub fn enumerate_clique_families(g: &Graph, q: usize, m: usize) -> Vec<CliqueFamily> {
    let mut out = Vec::new();
    let _ = for_each_clique_family(g, q, m, |f| {
        out.push(f);
        ControlFlow::<()>::Continue(())
    });
    out
}
