use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::holes::is_induced_cycle;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ChordalCertificate {
    /// Each vertex's neighbours later in `peo` form a clique.
    Chordal { peo: Vec<usize> },
    /// An induced cycle of length at least four.
    NotChordal { cycle: Vec<usize> },
}

impl ChordalCertificate {
    pub fn is_chordal(&self) -> bool {
        matches!(self, ChordalCertificate::Chordal { .. })
    }
}

/// Maximum cardinality search visiting order. Ties go to the vertex with the
/// most visited neighbours, then to the smallest id.
pub fn maximum_cardinality_search(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut label = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut buckets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n.max(1)];
    buckets[0].extend(0..n);
    let mut high = 0;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        while buckets[high].is_empty() {
            high -= 1;
        }
        let v = buckets[high].pop_first().expect("bucket is non-empty");
        visited[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !visited[w] {
                buckets[label[w]].remove(&w);
                label[w] += 1;
                buckets[label[w]].insert(w);
                high = high.max(label[w]);
            }
        }
    }
    order
}

/// Checks `peo` and returns the first vertex with two non-adjacent later
/// neighbours, if any.
fn first_peo_violation(g: &Graph, peo: &[usize]) -> Option<(usize, usize, usize)> {
    let mut pos = vec![0; g.n()];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    for &v in peo {
        let later: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| pos[w] > pos[v])
            .collect();
        for (i, &a) in later.iter().enumerate() {
            if let Some(&b) = later[i + 1..].iter().find(|&&b| !g.has_edge(a, b)) {
                return Some((v, a, b));
            }
        }
    }
    None
}

pub fn is_perfect_elimination_ordering(g: &Graph, peo: &[usize]) -> bool {
    let mut seen = vec![false; g.n()];
    peo.len() == g.n()
        && peo
            .iter()
            .all(|&v| v < g.n() && !std::mem::replace(&mut seen[v], true))
        && first_peo_violation(g, peo).is_none()
}

/// Shortest `u`-`w` path avoiding `v` and every other neighbour of `v`.
fn path_around(g: &Graph, v: usize, u: usize, w: usize) -> Option<Vec<usize>> {
    let mut blocked = vec![false; g.n()];
    blocked[v] = true;
    for &x in g.neighbors(v) {
        blocked[x] = true;
    }
    blocked[u] = false;
    blocked[w] = false;
    let mut prev = vec![usize::MAX; g.n()];
    prev[u] = u;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        if x == w {
            let mut path = vec![w];
            let mut cur = w;
            while cur != u {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &y in g.neighbors(x) {
            if !blocked[y] && prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// Turns `v` with non-adjacent neighbours `u`, `w` into an induced cycle
/// through `v`, if `u` and `w` are joined outside `N[v]`.
fn cycle_through(g: &Graph, v: usize, u: usize, w: usize) -> Option<Vec<usize>> {
    let path = path_around(g, v, u, w)?;
    let mut cycle = vec![v];
    cycle.extend(path);
    Some(cycle)
}

fn find_any_hole(g: &Graph) -> Option<Vec<usize>> {
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        for (i, &u) in nb.iter().enumerate() {
            for &w in &nb[i + 1..] {
                if !g.has_edge(u, w) {
                    if let Some(c) = cycle_through(g, v, u, w) {
                        return Some(c);
                    }
                }
            }
        }
    }
    None
}

/// Chordality via maximum cardinality search. The reverse visiting order is
/// a perfect elimination ordering exactly when the graph is chordal; when it
/// is not, an induced cycle of length at least four is extracted.
pub fn is_chordal(g: &Graph) -> Result<ChordalCertificate> {
    let mut peo = maximum_cardinality_search(g);
    peo.reverse();
    let Some((v, u, w)) = first_peo_violation(g, &peo) else {
        return Ok(ChordalCertificate::Chordal { peo });
    };
    let cycle = cycle_through(g, v, u, w)
        .or_else(|| find_any_hole(g))
        .ok_or_else(|| {
            Error::BadCertificate("ordering fails but no long induced cycle found".into())
        })?;
    if cycle.len() < 4 || !is_induced_cycle(g, &cycle) {
        return Err(Error::BadCertificate(format!(
            "{cycle:?} is not an induced cycle of length >= 4"
        )));
    }
    Ok(ChordalCertificate::NotChordal { cycle })
}
