//! Exact chromatic number and clique number.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::check_cap;

/// Exact `χ(G)`: starting from the clique number, tries `k`-colourings by
/// backtracking in decreasing-degree order until one exists. `cap` bounds
/// `|V(G)|`.
pub fn chromatic_number(g: &Graph, cap: usize) -> Result<usize> {
    check_cap("chromatic number", g.n(), cap)?;
    if g.n() == 0 {
        return Ok(0);
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let lower = max_clique_size(g, usize::MAX)?;
    let mut colour = vec![usize::MAX; g.n()];
    for k in lower..=g.n() {
        if colourable(g, &order, 0, k, 0, &mut colour) {
            return Ok(k);
        }
    }
    unreachable!("n colours always suffice")
}

fn colourable(
    g: &Graph,
    order: &[usize],
    i: usize,
    k: usize,
    used: usize,
    colour: &mut [usize],
) -> bool {
    if i == order.len() {
        return true;
    }
    let v = order[i];
    // a fresh colour is interchangeable with any other unused one
    for c in 0..k.min(used + 1) {
        if g.neighbors(v).iter().all(|&w| colour[w] != c) {
            colour[v] = c;
            if colourable(g, order, i + 1, k, used.max(c + 1), colour) {
                return true;
            }
        }
    }
    colour[v] = usize::MAX;
    false
}

struct CliqueSearch {
    /// Local adjacency among the candidate set, one bit row per candidate.
    rows: Vec<Vec<u64>>,
    best: usize,
    nodes: usize,
    budget: usize,
}

fn popcount(set: &[u64]) -> usize {
    set.iter().map(|w| w.count_ones() as usize).sum()
}

fn first_bit(set: &[u64]) -> Option<usize> {
    set.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

impl CliqueSearch {
    /// Greedy colouring of `p`; colour classes bound the clique size.
    fn colour_bound(&self, p: &[u64]) -> usize {
        let mut left = p.to_vec();
        let mut colours = 0;
        while popcount(&left) > 0 {
            colours += 1;
            let mut avail = left.clone();
            while let Some(v) = first_bit(&avail) {
                avail[v / 64] &= !(1 << (v % 64));
                left[v / 64] &= !(1 << (v % 64));
                for (a, r) in avail.iter_mut().zip(&self.rows[v]) {
                    *a &= !r;
                }
            }
        }
        colours
    }

    fn expand(&mut self, size: usize, p: Vec<u64>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::CapExceeded {
                what: "maximum clique search nodes",
                size: self.nodes,
                cap: self.budget,
            });
        }
        if popcount(&p) == 0 {
            self.best = self.best.max(size);
            return Ok(());
        }
        if size + popcount(&p) <= self.best || size + self.colour_bound(&p) <= self.best {
            return Ok(());
        }
        let mut p = p;
        while let Some(v) = first_bit(&p) {
            if size + popcount(&p) <= self.best {
                break;
            }
            let next: Vec<u64> = p.iter().zip(&self.rows[v]).map(|(a, b)| a & b).collect();
            self.expand(size + 1, next)?;
            p[v / 64] &= !(1 << (v % 64));
        }
        Ok(())
    }
}

/// `ω(G)` by branch and bound. Vertices are processed in a degeneracy order;
/// the clique whose earliest vertex is `v` lies inside `v`'s later
/// neighbours, which keeps every bitset small even on large sparse graphs.
/// `budget` caps the number of search nodes.
pub fn max_clique_size(g: &Graph, budget: usize) -> Result<usize> {
    let n = g.n();
    if n == 0 {
        return Ok(0);
    }
    let order = degeneracy_order(g);
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut search = CliqueSearch {
        rows: Vec::new(),
        best: 1,
        nodes: 0,
        budget,
    };
    for &v in &order {
        let later: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| pos[w] > pos[v])
            .collect();
        if later.len() < search.best {
            continue;
        }
        let words = later.len().div_ceil(64).max(1);
        search.rows = later
            .iter()
            .map(|&a| {
                let mut row = vec![0u64; words];
                for (j, &b) in later.iter().enumerate() {
                    if g.has_edge(a, b) {
                        row[j / 64] |= 1 << (j % 64);
                    }
                }
                row
            })
            .collect();
        let mut p = vec![0u64; words];
        for j in 0..later.len() {
            p[j / 64] |= 1 << (j % 64);
        }
        search.expand(1, p)?;
    }
    Ok(search.best)
}

/// Repeatedly removes a minimum-degree vertex (smallest id on ties).
fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let maxd = deg.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); maxd + 1];
    for v in 0..n {
        buckets[deg[v]].insert(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut low = 0usize;
    for _ in 0..n {
        low = low.saturating_sub(1);
        while buckets[low].is_empty() {
            low += 1;
        }
        let v = buckets[low].pop_first().expect("non-empty bucket");
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                buckets[deg[w]].remove(&w);
                deg[w] -= 1;
                buckets[deg[w]].insert(w);
            }
        }
    }
    order
}
