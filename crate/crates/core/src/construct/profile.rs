//! Vertex-count prediction from clique-count polynomials.
//!
//! Every step of the recursive constructions adds copies at cliques of a
//! base graph, so the number of cliques of each size in the result follows
//! from the same numbers for the ingredients. Counts saturate at
//! `u128::MAX` (a saturated value is a lower bound) and polynomials are cut
//! above the largest clique that fits under both caps: a bigger clique would
//! already put its graph over a cap.

use std::collections::HashMap;
use std::rc::Rc;

use super::bounds::Family;

/// Vertex count the construction would produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizePrediction {
    pub vertices: u128,
    /// Unknown when the prediction stopped before reaching the edges.
    pub edges: Option<u128>,
    /// False when the numbers are only lower bounds: a count saturated, or
    /// the prediction stopped at an intermediate graph already over a cap.
    pub exact: bool,
}

impl SizePrediction {
    /// The first cap exceeded, as `(what, predicted, cap)`.
    pub fn exceeded(
        &self,
        vertex_cap: usize,
        edge_cap: usize,
    ) -> Option<(&'static str, u128, usize)> {
        if self.vertices > vertex_cap as u128 {
            return Some(("vertices", self.vertices, vertex_cap));
        }
        match self.edges {
            Some(e) if e > edge_cap as u128 => Some(("edges", e, edge_cap)),
            _ => None,
        }
    }
}

/// `counts[j]` = number of `j`-cliques; `counts[0] = 1`.
type Poly = Rc<Vec<u128>>;

fn sadd(a: u128, b: u128) -> u128 {
    a.saturating_add(b)
}

fn smul(a: u128, b: u128) -> u128 {
    a.saturating_mul(b)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `C(n, j+1)` from `c = C(n, j)`, saturating. Only used on the rising half
/// `j < n/2`, where a saturated input stays a valid lower bound.
fn next_binom(c: u128, n: u128, j: u128) -> u128 {
    if c == u128::MAX {
        return c;
    }
    let g = gcd(c, j + 1);
    smul(c / g, (n - j) / ((j + 1) / g))
}

fn binom(n: u128, j: u128) -> u128 {
    if j > n {
        return 0;
    }
    let j = j.min(n - j);
    (0..j).fold(1, |c, i| next_binom(c, n, i))
}

/// `(1+x)^e` up to degree `top`.
fn one_plus_x_pow(e: u128, top: usize) -> Vec<u128> {
    let top = e.min(top as u128) as usize;
    let half = top.min((e / 2) as usize);
    let mut out = Vec::with_capacity(top + 1);
    let mut c: u128 = 1;
    for j in 0..=half {
        out.push(c);
        c = next_binom(c, e, j as u128);
    }
    for j in half + 1..=top {
        out.push(out[(e - j as u128) as usize]);
    }
    out
}

/// Number of ways to split a `qm`-set into `m` unordered blocks of size `q`:
/// the product over blocks of `C(remaining - 1, q - 1)`.
fn split_count(q: u128, m: u128) -> u128 {
    (0..m).fold(1, |acc, i| smul(acc, binom(q * (m - i) - 1, q - 1)))
}

pub(crate) struct Predictor {
    cap: u128,
    edge_cap: u128,
    max_degree: usize,
    memo: HashMap<(Family, u64, u64, u64), Poly>,
}

/// Why a prediction stopped early.
pub(crate) struct OverCap(pub SizePrediction);

impl OverCap {
    /// The same numbers seen from a graph containing this one.
    fn nested(mut self) -> Self {
        self.0.exact = false;
        self
    }
}

impl Predictor {
    pub(crate) fn new(cap: usize, edge_cap: usize) -> Self {
        // largest w with w(w-1)/2 <= edge_cap
        let mut w = ((2.0 * edge_cap as f64).sqrt() as u128).max(1);
        while w * (w - 1) / 2 > edge_cap as u128 {
            w -= 1;
        }
        while (w + 1) * w / 2 <= edge_cap as u128 {
            w += 1;
        }
        Predictor {
            cap: cap as u128,
            edge_cap: edge_cap as u128,
            max_degree: (w.min(cap as u128) as usize).min(usize::MAX - 2) + 1,
            memo: HashMap::new(),
        }
    }

    fn trim(&self, mut p: Vec<u128>) -> Poly {
        p.truncate(self.max_degree + 1);
        while p.len() > 1 && p.last() == Some(&0) {
            p.pop();
        }
        Rc::new(p)
    }

    fn coeff(p: &[u128], j: usize) -> u128 {
        p.get(j).copied().unwrap_or(0)
    }

    fn over(&self, vertices: u128, exact: bool) -> Result<(), OverCap> {
        if vertices > self.cap {
            return Err(OverCap(SizePrediction {
                vertices,
                edges: None,
                exact: exact && vertices != u128::MAX,
            }));
        }
        Ok(())
    }

    /// Checks a finished profile of a graph contained in the target.
    fn over_poly(&self, p: &[u128], exact: bool) -> Result<(), OverCap> {
        self.over(p[1], exact)?;
        let edges = Self::coeff(p, 2);
        if edges > self.edge_cap {
            return Err(OverCap(SizePrediction {
                vertices: p[1],
                edges: Some(edges),
                exact: exact && edges != u128::MAX,
            }));
        }
        Ok(())
    }

    /// Clique profile of `K_r`.
    fn complete(&self, r: u64) -> Result<Poly, OverCap> {
        let r = r as u128;
        self.over(r, true)?;
        let edges = if r.is_multiple_of(2) {
            smul(r / 2, r.saturating_sub(1))
        } else {
            smul(r, (r - 1) / 2)
        };
        self.over_poly(&[1, r, edges], true)?;
        Ok(self.trim(one_plus_x_pow(r, self.max_degree)))
    }

    /// `A` plus, at each `k`-clique of `A`, a copy of `B` complete to it.
    fn copy_step(&self, a: &[u128], b: &[u128], k: usize) -> Vec<u128> {
        let sites = Self::coeff(a, k);
        let mut out = a.to_vec();
        if sites == 0 {
            return out;
        }
        // (1+x)^k (B - 1), one site
        let mut extra: Vec<u128> = b.to_vec();
        extra[0] = 0;
        extra.resize(b.len() + k, 0);
        for _ in 0..k {
            for j in (1..extra.len()).rev() {
                extra[j] = sadd(extra[j], extra[j - 1]);
            }
        }
        if out.len() < extra.len() {
            out.resize(extra.len(), 0);
        }
        for (j, e) in extra.into_iter().enumerate() {
            out[j] = sadd(out[j], smul(sites, e));
        }
        out
    }

    /// Runs the `r`-chain `G(r) = A + cliques_k(A) * G(r-1)` from `G(1) = A`.
    fn chain(
        &mut self,
        key: impl Fn(u64) -> (Family, u64, u64, u64),
        a: Poly,
        k: usize,
        r: u64,
    ) -> Result<Poly, OverCap> {
        let sites = Self::coeff(&a, k);
        if sites == 0 || r == 1 {
            return Ok(a);
        }
        let mut b = a.clone();
        for step in 2..=r {
            if let Some(p) = self.memo.get(&key(step)) {
                b = p.clone();
                continue;
            }
            let size = sadd(a[1], smul(sites, b[1]));
            // G(step) is an induced subgraph of G(r), so this is a lower bound
            self.over(size, step == r)?;
            b = self.trim(self.copy_step(&a, &b, k));
            self.over_poly(&b, step == r)?;
            self.memo.insert(key(step), b.clone());
        }
        Ok(b)
    }

    /// Base graph plus one gadget per family of `m` disjoint `q`-cliques;
    /// `gadget_vertices` per family, `gadget` = the new cliques per family.
    /// Number of families of `m` disjoint `q`-cliques with a clique union.
    fn family_count(a: &[u128], q: u128, m: u128) -> u128 {
        match q.checked_mul(m) {
            Some(u) if u < a.len() as u128 => smul(a[u as usize], split_count(q, m)),
            _ => 0,
        }
    }

    fn gadget_step(
        &self,
        a: &[u128],
        q: u128,
        m: u128,
        gadget_vertices: u128,
        gadget: impl FnOnce() -> Vec<u128>,
    ) -> Result<Vec<u128>, OverCap> {
        let families = Self::family_count(a, q, m);
        self.over(sadd(a[1], smul(families, gadget_vertices)), true)?;
        let mut out = a.to_vec();
        if families == 0 {
            return Ok(out);
        }
        let g = gadget();
        if out.len() < g.len() {
            out.resize(g.len(), 0);
        }
        for (j, c) in g.into_iter().enumerate() {
            out[j] = sadd(out[j], smul(families, c));
        }
        Ok(out)
    }

    fn memo_or(
        &mut self,
        key: (Family, u64, u64, u64),
        f: impl FnOnce(&mut Self) -> Result<Poly, OverCap>,
    ) -> Result<Poly, OverCap> {
        if let Some(p) = self.memo.get(&key) {
            return Ok(p.clone());
        }
        let p = f(self)?;
        self.memo.insert(key, p.clone());
        Ok(p)
    }

    /// Clique profile of the chordal (`m = k+1`) or perfect (`m = 2k+1`)
    /// family member `G(k, r)`.
    pub(crate) fn bounded(&mut self, family: Family, k: u64, r: u64) -> Result<Poly, OverCap> {
        self.memo_or((family, k, 0, r), |me| {
            if k == 1 {
                return me.complete(r);
            }
            if r > 1 {
                let a = me.bounded(family, k, 1).map_err(OverCap::nested)?;
                return me.chain(|s| (family, k, 0, s), a, k as usize, r);
            }
            let m = match family {
                Family::Perfect => 2 * k + 1,
                _ => k + 1,
            };
            let base = me.bounded(family, k - 1, m).map_err(OverCap::nested)?;
            let (kk, mm) = (k as u128, m as u128);
            let max_degree = me.max_degree;
            let gadget = || {
                // cliques meeting the gadget: inside it (size >= 2), or one
                // gadget vertex with any subset of its (k-1)-clique
                let mut g = vec![0u128; (k as usize + 2).min(max_degree + 1)];
                let copies: u128 = if family == Family::Perfect { 2 } else { 1 };
                for (j, slot) in g.iter_mut().enumerate().skip(2) {
                    *slot = smul(copies, binom(kk + 1, j as u128));
                }
                for j in 1..=k as usize {
                    if j < g.len() {
                        g[j] = sadd(g[j], smul(mm, binom(kk - 1, j as u128 - 1)));
                    }
                }
                g
            };
            let out = me.trim(me.gadget_step(&base, kk - 1, mm, mm, gadget)?);
            me.over_poly(&out, true)?;
            Ok(out)
        })
    }

    /// Clique profile of `G(k, t, r)` from the general family.
    pub(crate) fn general(&mut self, k: u64, t: u64, r: u64) -> Result<Poly, OverCap> {
        self.memo_or((Family::General, k, t, r), |me| {
            if t == 1 {
                return me.complete(1);
            }
            if k == 1 {
                return me.complete(r);
            }
            if r > 1 {
                let a = me.general(k, t, 1).map_err(OverCap::nested)?;
                return me.chain(|s| (Family::General, k, t, s), a, k as usize, r);
            }
            // B only ends up inside G if A has a family to attach it to
            let b = me.general(k, t - 1, 1);
            let n = b.as_ref().map_or(u128::MAX, |b| b[1]);
            // A = G(k-1, t, 2^n) already holds 2^n vertices when it grows
            // with r; otherwise it has no (k-1)2^n-clique and nothing is added
            let slots = if n < 127 { 1u128 << n } else { u128::MAX };
            let a_r = u64::try_from(slots).unwrap_or(u64::MAX);
            let a = me.general(k - 1, t, a_r).map_err(OverCap::nested)?;
            let q = (k - 1) as u128;
            if Self::family_count(&a, q, slots) == 0 {
                return Ok(a);
            }
            let b = b.map_err(OverCap::nested)?;
            let max_degree = me.max_degree;
            let b2 = b.clone();
            let gadget = move || {
                // a j-clique T of B plus any subset of the union of C_i over
                // the 2^(n-j) subsets S^i containing T
                let mut g = vec![0u128; 1];
                for (j, &cb) in b2.iter().enumerate().skip(1) {
                    if cb == 0 {
                        continue;
                    }
                    let pool = smul(q, 1u128 << (n as usize - j));
                    let pow = one_plus_x_pow(pool, max_degree);
                    let need = (j + pow.len()).min(max_degree + 1);
                    if g.len() < need {
                        g.resize(need, 0);
                    }
                    for (i, c) in pow.into_iter().enumerate() {
                        if i + j < g.len() {
                            g[i + j] = sadd(g[i + j], smul(cb, c));
                        }
                    }
                }
                g
            };
            let out = me.trim(me.gadget_step(&a, q, slots, n, gadget)?);
            me.over_poly(&out, true)?;
            Ok(out)
        })
    }
}

/// Predicted vertex and edge counts, or the first evidence that one of them
/// exceeds its cap.
pub fn predict_size(
    family: Family,
    k: u64,
    t: u64,
    r: u64,
    cap: usize,
    edge_cap: usize,
) -> SizePrediction {
    let mut p = Predictor::new(cap, edge_cap);
    let res = match family {
        Family::General => p.general(k, t, r),
        _ => p.bounded(family, k, r),
    };
    match res {
        Ok(poly) => SizePrediction {
            vertices: poly[1],
            edges: Some(Predictor::coeff(&poly, 2)),
            exact: true,
        },
        Err(OverCap(pred)) => pred,
    }
}

/// Full clique-count profile, when every count stays below `cap` vertices.
#[cfg(test)]
pub(crate) fn predict_profile(
    family: Family,
    k: u64,
    t: u64,
    r: u64,
    cap: usize,
) -> Option<Vec<u128>> {
    let mut p = Predictor::new(cap, usize::MAX);
    let res = match family {
        Family::General => p.general(k, t, r),
        _ => p.bounded(family, k, r),
    };
    res.ok().map(|poly| poly.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    const BIG: usize = 1_000_000;

    #[test]
    fn small_profiles() {
        assert_eq!(
            predict_profile(Family::Chordal, 1, 0, 1, BIG).unwrap(),
            vec![1, 1]
        );
        assert_eq!(
            predict_profile(Family::Chordal, 1, 0, 3, BIG).unwrap(),
            vec![1, 3, 3, 1]
        );
        // the prism
        assert_eq!(
            predict_profile(Family::Chordal, 2, 0, 1, BIG).unwrap(),
            vec![1, 6, 9, 2]
        );
        assert_eq!(
            predict_profile(Family::Perfect, 2, 0, 1, BIG).unwrap(),
            vec![1, 10, 21, 12, 5, 1]
        );
        // P3
        assert_eq!(
            predict_profile(Family::General, 2, 2, 1, BIG).unwrap(),
            vec![1, 3, 2]
        );
        assert_eq!(
            predict_profile(Family::General, 5, 1, 7, BIG).unwrap(),
            vec![1, 1]
        );
    }

    #[test]
    fn sizes() {
        assert_eq!(
            predict_size(Family::Chordal, 2, 0, 2, BIG, BIG).vertices,
            60
        );
        assert_eq!(
            predict_size(Family::Chordal, 2, 0, 3, BIG, BIG).vertices,
            6 + 9 * 60
        );
        assert_eq!(
            predict_size(Family::Perfect, 2, 0, 2, BIG, BIG).vertices,
            10 + 21 * 10
        );
    }

    #[test]
    fn refusal_is_reported() {
        let p = predict_size(Family::Chordal, 2, 0, 3, 100, BIG);
        // G(2,2) = 60 fits; G(2,3) = 546 is the first over the cap and is
        // the requested graph, so the number is exact
        assert_eq!(
            p,
            SizePrediction {
                vertices: 546,
                edges: None,
                exact: true
            }
        );
        let p = predict_size(Family::Chordal, 2, 0, 1_000_000_000, 100, BIG);
        assert!(!p.exact);
        assert!(p.vertices > 100);
        // K_2000 has 1999000 edges
        let p = predict_size(Family::Chordal, 1, 0, 2000, BIG, 1_000_000);
        assert_eq!(
            p.exceeded(BIG, 1_000_000),
            Some(("edges", 1_999_000, 1_000_000))
        );
        assert!(p.exact);
    }

    #[test]
    fn binomials() {
        assert_eq!(one_plus_x_pow(4, 10), vec![1, 4, 6, 4, 1]);
        assert_eq!(one_plus_x_pow(5, 2), vec![1, 5, 10]);
        assert_eq!(binom(30, 15), 155_117_520);
        assert_eq!(binom(3, 4), 0);
        assert_eq!(binom(1000, 500), u128::MAX);
        let row = one_plus_x_pow(1000, 1000);
        assert_eq!(row[999], 1000);
        assert_eq!(row[500], u128::MAX);
    }

    #[test]
    fn split_counts() {
        assert_eq!(split_count(2, 2), 3);
        assert_eq!(split_count(1, 5), 1);
        assert_eq!(split_count(2, 3), 15);
        assert_eq!(split_count(3, 2), 10);
    }
}
