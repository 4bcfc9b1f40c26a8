//! Backtracking isomorphism and induced-subgraph containment for small graphs.

use std::collections::BTreeMap;

use super::Graph;
use crate::error::Result;
use crate::limits::check_cap;

/// Searches for an injective map `V(H) -> V(G)` preserving adjacency and
/// non-adjacency. Returns the image of each vertex of `H`.
///
/// `cap` bounds `|V(H)|`.
pub fn contains_induced(g: &Graph, h: &Graph, cap: usize) -> Result<Option<Vec<usize>>> {
    check_cap("induced containment pattern", h.n(), cap)?;
    if h.n() > g.n() {
        return Ok(None);
    }
    if h.n() == 0 {
        return Ok(Some(Vec::new()));
    }
    let order = search_order(h);
    let mut image = vec![usize::MAX; h.n()];
    let mut used = vec![false; g.n()];
    let found = embed(g, h, &order, 0, &mut image, &mut used);
    Ok(found.then_some(image))
}

/// Pattern vertices in an order where each one (after the first in its
/// component) has an already placed neighbour; high degree first.
fn search_order(h: &Graph) -> Vec<usize> {
    let mut placed = vec![false; h.n()];
    let mut order = Vec::with_capacity(h.n());
    while order.len() < h.n() {
        let next = (0..h.n())
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = h.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (back, h.degree(v), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex exists");
        placed[next] = true;
        order.push(next);
    }
    order
}

fn embed(
    g: &Graph,
    h: &Graph,
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let hv = order[depth];
    for gv in 0..g.n() {
        if used[gv] || g.degree(gv) < h.degree(hv) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&hw| h.has_edge(hv, hw) == g.has_edge(gv, image[hw]));
        if !consistent {
            continue;
        }
        image[hv] = gv;
        used[gv] = true;
        if embed(g, h, order, depth + 1, image, used) {
            return true;
        }
        used[gv] = false;
    }
    image[hv] = usize::MAX;
    false
}

/// Colour refinement run jointly on both graphs so colours are comparable.
fn refine(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    let mut cg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut ch: Vec<usize> = (0..h.n()).map(|v| h.degree(v)).collect();
    let mut classes = 0;
    loop {
        let sig = |graph: &Graph, col: &[usize], v: usize| {
            let mut nb: Vec<usize> = graph.neighbors(v).iter().map(|&w| col[w]).collect();
            nb.sort_unstable();
            (col[v], nb)
        };
        let sg: Vec<_> = (0..g.n()).map(|v| sig(g, &cg, v)).collect();
        let sh: Vec<_> = (0..h.n()).map(|v| sig(h, &ch, v)).collect();
        let mut ids = BTreeMap::new();
        for s in sg.iter().chain(sh.iter()) {
            let next = ids.len();
            ids.entry(s.clone()).or_insert(next);
        }
        cg = sg.iter().map(|s| ids[s]).collect();
        ch = sh.iter().map(|s| ids[s]).collect();
        if ids.len() == classes {
            return (cg, ch);
        }
        classes = ids.len();
    }
}

/// An adjacency-preserving bijection `V(G) -> V(H)`, if one exists.
///
/// Degree refinement prunes candidates; the rest is plain backtracking, so
/// `cap` bounds `|V(G)|`.
pub fn find_isomorphism(g: &Graph, h: &Graph, cap: usize) -> Result<Option<Vec<usize>>> {
    check_cap("isomorphism", g.n(), cap)?;
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let (cg, ch) = refine(g, h);
    let mut hist_g = cg.clone();
    let mut hist_h = ch.clone();
    hist_g.sort_unstable();
    hist_h.sort_unstable();
    if hist_g != hist_h {
        return Ok(None);
    }
    // rarest colour classes first, then keep the search connected
    let mut class_size = BTreeMap::new();
    for &c in &cg {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    let mut placed = vec![false; g.n()];
    let mut order = Vec::with_capacity(g.n());
    while order.len() < g.n() {
        let next = (0..g.n())
            .filter(|&v| !placed[v])
            .min_by_key(|&v| {
                let back = g.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (std::cmp::Reverse(back), class_size[&cg[v]], v)
            })
            .expect("unplaced vertex exists");
        placed[next] = true;
        order.push(next);
    }
    let mut map = vec![usize::MAX; g.n()];
    let mut used = vec![false; h.n()];
    let found = iso_search(g, h, &cg, &ch, &order, 0, &mut map, &mut used);
    Ok(found.then_some(map))
}

#[allow(clippy::too_many_arguments)]
fn iso_search(
    g: &Graph,
    h: &Graph,
    cg: &[usize],
    ch: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..h.n() {
        if used[w] || ch[w] != cg[v] {
            continue;
        }
        if !order[..depth]
            .iter()
            .all(|&u| g.has_edge(v, u) == h.has_edge(w, map[u]))
        {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if iso_search(g, h, cg, ch, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
    }
    map[v] = usize::MAX;
    false
}

pub fn are_isomorphic(g: &Graph, h: &Graph, cap: usize) -> Result<bool> {
    Ok(find_isomorphism(g, h, cap)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn containment_examples() {
        assert!(contains_induced(&Graph::cycle(4), &Graph::path(3), 8)
            .unwrap()
            .is_some());
        assert!(contains_induced(&Graph::complete(4), &Graph::cycle(4), 8)
            .unwrap()
            .is_none());
        let w = contains_induced(&Graph::prism(), &Graph::cycle(4), 8)
            .unwrap()
            .unwrap();
        let mut image = w.clone();
        image.sort_unstable();
        // every induced C4 of the prism uses one matching edge pair
        assert!([vec![0, 1, 3, 4], vec![0, 2, 3, 5], vec![1, 2, 4, 5]].contains(&image));
    }

    #[test]
    fn containment_cap_is_an_error() {
        let err = contains_induced(&Graph::complete(12), &Graph::complete(9), 8).unwrap_err();
        assert!(matches!(
            err,
            Error::CapExceeded {
                size: 9,
                cap: 8,
                ..
            }
        ));
    }

    #[test]
    fn isomorphism_examples() {
        assert!(are_isomorphic(&Graph::complete(3), &Graph::cycle(3), 12).unwrap());
        assert!(!are_isomorphic(&Graph::path(3), &Graph::complete(3), 12).unwrap());
        // two 3-regular graphs on 6 vertices: prism vs K_{3,3}
        let k33 = Graph::new(6, (0..3).flat_map(|u| (3..6).map(move |v| (u, v)))).unwrap();
        assert!(!are_isomorphic(&Graph::prism(), &k33, 12).unwrap());
        let relabelled = Graph::new(
            6,
            [
                (5, 2),
                (2, 0),
                (0, 5),
                (1, 4),
                (4, 3),
                (3, 1),
                (5, 1),
                (2, 4),
                (0, 3),
            ],
        )
        .unwrap();
        let map = find_isomorphism(&Graph::prism(), &relabelled, 12)
            .unwrap()
            .unwrap();
        for &(u, v) in Graph::prism().edges() {
            assert!(relabelled.has_edge(map[u], map[v]));
        }
    }

    #[test]
    fn isomorphism_cap_is_an_error() {
        assert!(are_isomorphic(&Graph::empty(13), &Graph::empty(13), 12).is_err());
    }
}
