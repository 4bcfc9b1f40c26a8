//! Connected-partition enumeration over restricted growth strings.
//!
//! Vertex `i` joins one of the blocks opened by vertices `< i` or opens a new
//! one. After every placement each block must still be connectable through
//! the vertices not yet placed; a block failing that test can never become
//! connected, so the whole subtree is skipped. At the leaves nothing remains
//! unplaced and the test is exactly "every block is connected".

use crate::error::Result;
use crate::graph::{bits, Graph};
use crate::limits::check_cap;

use super::Partition;

/// Hard ceiling imposed by the `u64` vertex masks.
pub const MASK_VERTICES_MAX: usize = 64;

fn neighborhood(rows: &[u64], set: u64) -> u64 {
    bits(set).fold(0, |acc, v| acc | rows[v])
}

/// True iff `block` lies in one component of the graph induced by `allowed`.
#[inline]
fn connectable(rows: &[u64], block: u64, allowed: u64) -> bool {
    let mut reach = block & block.wrapping_neg();
    loop {
        let next = reach | (neighborhood(rows, reach) & allowed);
        if next == reach {
            return block & !reach == 0;
        }
        reach = next;
    }
}

fn unplaced_after(n: usize, i: usize) -> u64 {
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let placed = if i + 1 >= 64 {
        u64::MAX
    } else {
        (1u64 << (i + 1)) - 1
    };
    all & !placed
}

/// Depth-first restricted-growth-string enumerator working on `u64` masks.
///
/// Created from an already placed prefix, it never backtracks into the
/// prefix, so disjoint prefixes give disjoint subspaces.
#[derive(Debug, Clone)]
pub struct MaskEnumerator {
    rows: Vec<u64>,
    n: usize,
    floor: usize,
    /// Block chosen by each placed vertex.
    choice: Vec<usize>,
    blocks: Vec<u64>,
    started: bool,
    done: bool,
}

impl MaskEnumerator {
    /// `prefix[i]` is the block of vertex `i`; it must be a valid
    /// restricted growth string.
    pub fn with_prefix(rows: &[u64], prefix: &[usize]) -> Self {
        let n = rows.len();
        assert!(n <= MASK_VERTICES_MAX);
        assert!(prefix.len() <= n);
        let mut blocks: Vec<u64> = Vec::new();
        for (v, &b) in prefix.iter().enumerate() {
            assert!(
                b <= blocks.len(),
                "prefix is not a restricted growth string"
            );
            if b == blocks.len() {
                blocks.push(0);
            }
            blocks[b] |= 1 << v;
        }
        MaskEnumerator {
            rows: rows.to_vec(),
            n,
            floor: prefix.len(),
            choice: prefix.to_vec(),
            blocks,
            started: false,
            done: false,
        }
    }

    pub fn new(rows: &[u64]) -> Self {
        MaskEnumerator::with_prefix(rows, &[])
    }

    fn viable(&self, placed: usize) -> bool {
        let free = unplaced_after(self.n, placed);
        self.blocks
            .iter()
            .all(|&b| connectable(&self.rows, b, b | free))
    }

    fn place(&mut self, v: usize, b: usize) {
        if b == self.blocks.len() {
            self.blocks.push(0);
        }
        self.blocks[b] |= 1 << v;
        self.choice.push(b);
    }

    fn unplace(&mut self) -> Option<usize> {
        let v = self.choice.len().checked_sub(1)?;
        let b = self.choice.pop()?;
        self.blocks[b] &= !(1 << v);
        if self.blocks[b] == 0 {
            debug_assert_eq!(b + 1, self.blocks.len());
            self.blocks.pop();
        }
        Some(b)
    }

    /// Descends from the current state, trying blocks `from..` for the next
    /// vertex and backtracking as needed, until a leaf is reached.
    fn advance(&mut self, mut from: usize) -> bool {
        loop {
            let v = self.choice.len();
            if v == self.n {
                return true;
            }
            let mut placed = false;
            for b in from..=self.blocks.len() {
                self.place(v, b);
                if self.viable(v) {
                    placed = true;
                    break;
                }
                self.unplace();
            }
            if placed {
                from = 0;
                continue;
            }
            if self.choice.len() <= self.floor {
                return false;
            }
            from = self.unplace().expect("above floor") + 1;
        }
    }

    /// Block masks of the next connected partition.
    pub fn next_masks(&mut self) -> Option<&[u64]> {
        if self.done {
            return None;
        }
        let found = if !self.started {
            self.started = true;
            let prefix_ok = self.floor == 0 || self.viable(self.floor - 1);
            prefix_ok && self.advance(0)
        } else if self.choice.len() <= self.floor {
            false
        } else {
            let b = self.unplace().expect("above floor");
            self.advance(b + 1)
        };
        if found {
            Some(&self.blocks)
        } else {
            self.done = true;
            None
        }
    }

    /// Current restricted growth string.
    pub fn rgs(&self) -> &[usize] {
        &self.choice
    }
}

/// All viable prefixes of length `min(depth, n)`, in enumeration order.
pub fn rgs_prefixes(rows: &[u64], depth: usize) -> Vec<Vec<usize>> {
    let depth = depth.min(rows.len());
    let mut out = Vec::new();
    let mut e = MaskEnumerator {
        rows: rows.to_vec(),
        n: depth,
        floor: 0,
        choice: Vec::new(),
        blocks: Vec::new(),
        started: false,
        done: false,
    };
    // viability is judged against the full vertex set, not just the prefix
    let full_n = rows.len();
    let mut from = 0;
    loop {
        let v = e.choice.len();
        if v == depth {
            out.push(e.choice.clone());
            match e.unplace() {
                Some(b) => from = b + 1,
                None => return out,
            }
            continue;
        }
        let mut placed = false;
        for b in from..=e.blocks.len() {
            e.place(v, b);
            let free = unplaced_after(full_n, v);
            if e.blocks
                .iter()
                .all(|&blk| connectable(rows, blk, blk | free))
            {
                placed = true;
                break;
            }
            e.unplace();
        }
        if placed {
            from = 0;
        } else {
            match e.unplace() {
                Some(b) => from = b + 1,
                None => return out,
            }
        }
    }
}

/// Streaming iterator over the connected partitions of a small graph.
pub struct ConnectedPartitions {
    inner: MaskEnumerator,
}

impl Iterator for ConnectedPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let n = self.inner.n;
        self.inner.next_masks().map(|m| Partition::from_masks(n, m))
    }
}

/// Every connected partition of `g` exactly once, in restricted-growth-string
/// order. `cap` bounds `|V(G)|`.
pub fn enumerate_connected_partitions(g: &Graph, cap: usize) -> Result<ConnectedPartitions> {
    check_cap(
        "connected-partition enumeration",
        g.n(),
        cap.min(MASK_VERTICES_MAX),
    )?;
    let rows = g.mask_rows().expect("checked against the mask ceiling");
    Ok(ConnectedPartitions {
        inner: MaskEnumerator::new(&rows),
    })
}

pub fn count_connected_partitions(g: &Graph, cap: usize) -> Result<u64> {
    check_cap(
        "connected-partition enumeration",
        g.n(),
        cap.min(MASK_VERTICES_MAX),
    )?;
    let rows = g.mask_rows().expect("checked against the mask ceiling");
    let mut e = MaskEnumerator::new(&rows);
    let mut count = 0;
    while e.next_masks().is_some() {
        count += 1;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::is_connected_partition;

    /// Every set partition of `0..n` as block lists, by plain recursion.
    fn all_set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
        fn go(v: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
            if v == n {
                out.push(cur.clone());
                return;
            }
            for i in 0..cur.len() {
                cur[i].push(v);
                go(v + 1, n, cur, out);
                cur[i].pop();
            }
            cur.push(vec![v]);
            go(v + 1, n, cur, out);
            cur.pop();
        }
        let mut out = Vec::new();
        go(0, n, &mut Vec::new(), &mut out);
        out
    }

    fn naive_connected(g: &Graph) -> Vec<Partition> {
        all_set_partitions(g.n())
            .into_iter()
            .map(|blocks| {
                Partition::new(g.n(), blocks.into_iter().map(Into::into).collect()).unwrap()
            })
            .filter(|p| is_connected_partition(g, p).unwrap())
            .collect()
    }

    #[test]
    fn bell_numbers_on_complete_graphs() {
        let bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140];
        for (n, &b) in bell.iter().enumerate() {
            assert_eq!(all_set_partitions(n).len(), b);
            if n > 0 {
                assert_eq!(
                    count_connected_partitions(&Graph::complete(n), 12).unwrap(),
                    b as u64
                );
            }
        }
    }

    #[test]
    fn small_examples() {
        assert_eq!(count_connected_partitions(&Graph::empty(1), 12).unwrap(), 1);
        let p3: Vec<_> = enumerate_connected_partitions(&Graph::path(3), 12)
            .unwrap()
            .collect();
        assert_eq!(p3.len(), 4);
        assert!(!p3.contains(&Partition::new(3, vec![[0, 2].into(), [1].into()]).unwrap()));
        assert_eq!(
            count_connected_partitions(&Graph::complete(3), 12).unwrap(),
            5
        );
        // only the singleton partition of an edgeless graph is connected
        assert_eq!(count_connected_partitions(&Graph::empty(5), 12).unwrap(), 1);
    }

    #[test]
    fn matches_naive_filter() {
        let graphs = [
            Graph::prism(),
            Graph::cycle(5),
            Graph::star(3),
            Graph::path(6),
            Graph::new(7, [(0, 1), (1, 2), (3, 4), (4, 5), (5, 3), (2, 6)]).unwrap(),
            Graph::cycle(4).disjoint_union(&Graph::path(3)),
        ];
        for g in &graphs {
            let mut got: Vec<_> = enumerate_connected_partitions(g, 12).unwrap().collect();
            let mut want = naive_connected(g);
            assert_eq!(got.len(), want.len(), "{g:?}");
            got.sort_by_key(|p| p.to_json());
            want.sort_by_key(|p| p.to_json());
            assert_eq!(got, want);
        }
    }

    #[test]
    fn prefixes_split_the_space() {
        let g = Graph::prism();
        let rows = g.mask_rows().unwrap();
        let total = count_connected_partitions(&g, 12).unwrap();
        for depth in 0..=6 {
            let mut sum = 0;
            let mut seen = Vec::new();
            for prefix in rgs_prefixes(&rows, depth) {
                let mut e = MaskEnumerator::with_prefix(&rows, &prefix);
                while let Some(m) = e.next_masks() {
                    sum += 1;
                    seen.push(m.to_vec());
                }
            }
            assert_eq!(sum, total, "depth {depth}");
            let before = seen.len();
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len(), before);
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(enumerate_connected_partitions(&Graph::empty(13), 12).is_err());
        assert!(count_connected_partitions(&Graph::empty(13), 13).is_ok());
    }
}
