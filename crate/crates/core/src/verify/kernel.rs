//! Mask-level checks used inside the enumeration loop. Graphs here have at
//! most 64 vertices, one `u64` adjacency row each.

use crate::graph::bits;

fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// True iff `cand` holds a clique of `need` vertices.
pub(crate) fn has_clique(rows: &[u64], cand: u64, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    let mut c = cand;
    while c != 0 {
        if (c.count_ones() as usize) < need {
            return false;
        }
        let v = c.trailing_zeros() as usize;
        c &= c - 1;
        if has_clique(rows, c & rows[v], need - 1) {
            return true;
        }
    }
    false
}

/// Some part contains `K_{k+1}`.
pub(crate) fn part_clique(rows: &[u64], parts: &[u64], k: usize) -> bool {
    parts.iter().any(|&p| has_clique(rows, p, k + 1))
}

/// A `K_{kr}` meeting exactly `r` parts in exactly `k` vertices each.
pub(crate) fn clique_spread(rows: &[u64], parts: &[u64], k: usize, r: usize) -> bool {
    let mut part_of = vec![0usize; rows.len()];
    for (i, &p) in parts.iter().enumerate() {
        for v in bits(p) {
            part_of[v] = i;
        }
    }
    let mut counts = vec![0usize; parts.len()];
    let n = rows.len();
    Spread {
        rows,
        parts,
        part_of: &part_of,
        k,
        r,
    }
    .go(full(n), &mut counts, 0, 0)
}

struct Spread<'a> {
    rows: &'a [u64],
    parts: &'a [u64],
    part_of: &'a [usize],
    k: usize,
    r: usize,
}

impl Spread<'_> {
    fn go(&self, cand: u64, counts: &mut [usize], opened: usize, size: usize) -> bool {
        // at most r parts with at most k each, so kr vertices means exactly
        let need = self.k * self.r - size;
        if need == 0 {
            return true;
        }
        let mut c = cand;
        while c != 0 {
            if (c.count_ones() as usize) < need {
                return false;
            }
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            let p = self.part_of[v];
            if counts[p] == 0 && opened == self.r {
                continue;
            }
            counts[p] += 1;
            let now_open = opened + usize::from(counts[p] == 1);
            let mut next = c & self.rows[v];
            if counts[p] == self.k {
                next &= !self.parts[p];
            }
            if now_open == self.r {
                let unfinished = counts
                    .iter()
                    .zip(self.parts)
                    .filter(|(&h, _)| h > 0 && h < self.k)
                    .fold(0u64, |m, (_, &part)| m | part);
                next &= unfinished;
            }
            let found = self.go(next, counts, now_open, size + 1);
            counts[p] -= 1;
            if found {
                return true;
            }
        }
        false
    }
}

/// Chordality by repeatedly deleting a simplicial vertex.
pub(crate) fn is_chordal_rows(rows: &[u64]) -> bool {
    let mut alive = full(rows.len());
    'outer: while alive != 0 {
        for v in bits(alive) {
            let nb = rows[v] & alive;
            if bits(nb).all(|w| nb & !rows[w] & !(1 << w) == 0) {
                alive &= !(1 << v);
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// The subgraph induced by `set` is 2-colourable.
pub(crate) fn is_bipartite_within(rows: &[u64], set: u64) -> bool {
    let mut side = [0u64; 2];
    let mut left = set;
    while left != 0 {
        let start = left & left.wrapping_neg();
        side[0] |= start;
        let mut frontier = start;
        let mut colour = 0;
        left &= !start;
        while frontier != 0 {
            let reach = bits(frontier).fold(0, |m, v| m | rows[v]) & set;
            if reach & side[colour] != 0 {
                return false;
            }
            colour ^= 1;
            frontier = reach & left;
            side[colour] |= frontier;
            left &= !frontier;
        }
    }
    true
}
