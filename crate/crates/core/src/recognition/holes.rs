//! Induced cycle search by path extension, and the odd hole / odd antihole
//! perfection test built on it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::limits::check_cap;

/// True iff `cycle` lists at least three distinct vertices forming an
/// induced cycle in this order.
pub fn is_induced_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 3 || cycle.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k {
        return false;
    }
    (0..k).all(|i| {
        (i + 1..k).all(|j| {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            g.has_edge(cycle[i], cycle[j]) == consecutive
        })
    })
}

fn extend(
    rows: &[u64],
    len: usize,
    allowed: u64,
    path: &mut Vec<usize>,
    path_mask: u64,
    inner_nbhd: u64,
) -> bool {
    let s = path[0];
    let last = *path.last().expect("path starts with s");
    let mut cands = rows[last] & allowed & !path_mask & !inner_nbhd;
    let closing = path.len() + 1 == len;
    if path.len() >= 2 {
        cands &= if closing { rows[s] } else { !rows[s] };
    }
    if closing {
        if let Some(x) = bits(cands).next() {
            path.push(x);
            return true;
        }
        return false;
    }
    // the previous last vertex becomes interior once x is appended
    let next_inner = if path.len() >= 2 {
        inner_nbhd | rows[last]
    } else {
        inner_nbhd
    };
    for x in bits(cands) {
        path.push(x);
        if extend(rows, len, allowed, path, path_mask | 1 << x, next_inner) {
            return true;
        }
        path.pop();
    }
    false
}

fn cycle_of_length(rows: &[u64], len: usize) -> Option<Vec<usize>> {
    let n = rows.len();
    if len < 3 || len > n {
        return None;
    }
    for s in 0..n {
        // s is the smallest vertex of the cycle
        let allowed = if s + 1 >= 64 {
            0
        } else {
            !((1u64 << (s + 1)) - 1)
        };
        let mut path = vec![s];
        if extend(rows, len, allowed, &mut path, 1 << s, 0) {
            return Some(path);
        }
    }
    None
}

/// An induced cycle on exactly `len` vertices, if one exists. `cap` bounds
/// `|V(G)|`.
pub fn find_induced_cycle_of_length(
    g: &Graph,
    len: usize,
    cap: usize,
) -> Result<Option<Vec<usize>>> {
    check_cap("induced cycle search", g.n(), cap.min(64))?;
    let rows = g.mask_rows().expect("at most 64 vertices");
    Ok(cycle_of_length(&rows, len))
}

/// A shortest induced cycle with at least `min_len` vertices.
pub fn find_induced_long_cycle(
    g: &Graph,
    min_len: usize,
    cap: usize,
) -> Result<Option<Vec<usize>>> {
    if min_len < 3 {
        return Err(Error::InvalidParameters(format!(
            "cycle length {min_len} < 3"
        )));
    }
    check_cap("induced cycle search", g.n(), cap.min(64))?;
    let rows = g.mask_rows().expect("at most 64 vertices");
    Ok((min_len..=g.n()).find_map(|len| cycle_of_length(&rows, len)))
}

fn odd_hole(rows: &[u64]) -> Option<Vec<usize>> {
    (5..=rows.len())
        .step_by(2)
        .find_map(|len| cycle_of_length(rows, len))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PerfectCertificate {
    Perfect,
    /// Induced odd cycle of length at least five.
    OddHole {
        cycle: Vec<usize>,
    },
    /// Vertices of an induced odd cycle (length at least five) of the complement.
    OddAntihole {
        cycle: Vec<usize>,
    },
}

impl PerfectCertificate {
    pub fn is_perfect(&self) -> bool {
        matches!(self, PerfectCertificate::Perfect)
    }
}

/// Perfection by the strong perfect graph theorem: no odd hole and no odd
/// antihole. Exponential; `cap` bounds `|V(G)|`.
pub fn is_perfect_small(g: &Graph, cap: usize) -> Result<PerfectCertificate> {
    check_cap("perfect graph test", g.n(), cap.min(64))?;
    let rows = g.mask_rows().expect("at most 64 vertices");
    if let Some(cycle) = odd_hole(&rows) {
        if !is_induced_cycle(g, &cycle) {
            return Err(Error::BadCertificate(format!("odd hole {cycle:?}")));
        }
        return Ok(PerfectCertificate::OddHole { cycle });
    }
    let co = g.complement();
    let co_rows = co.mask_rows().expect("at most 64 vertices");
    if let Some(cycle) = odd_hole(&co_rows) {
        if !is_induced_cycle(&co, &cycle) {
            return Err(Error::BadCertificate(format!("odd antihole {cycle:?}")));
        }
        return Ok(PerfectCertificate::OddAntihole { cycle });
    }
    Ok(PerfectCertificate::Perfect)
}

/// Perfection of a graph given as `u64` rows, for the verification kernel.
pub(crate) fn is_perfect_rows(rows: &[u64]) -> bool {
    if odd_hole(rows).is_some() {
        return false;
    }
    let n = rows.len();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let co: Vec<u64> = rows
        .iter()
        .enumerate()
        .map(|(v, &r)| !r & all & !(1 << v))
        .collect();
    odd_hole(&co).is_none()
}
