use std::ops::ControlFlow;

use super::{Graph, VertexSet};

impl Graph {
    /// All `q`-cliques in lexicographic order.
    pub fn enumerate_cliques(&self, q: usize) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let _ = self.for_each_clique(q, |c| {
            out.push(VertexSet::new(c.to_vec()));
            ControlFlow::<()>::Continue(())
        });
        out
    }

    /// Visits every `q`-clique (ascending members) in lexicographic order
    /// until the visitor breaks.
    pub fn for_each_clique<B>(
        &self,
        q: usize,
        mut visit: impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let mut stack = Vec::with_capacity(q);
        if q == 0 {
            return visit(&stack);
        }
        for v in 0..self.n {
            stack.push(v);
            if q == 1 {
                visit(&stack)?;
            } else {
                let next = self.later_neighbors(v);
                if next.len() >= q - 1 {
                    self.extend_clique(q, next, &mut stack, &mut visit)?;
                }
            }
            stack.pop();
        }
        ControlFlow::Continue(())
    }

    /// Neighbours of `v` with a larger id, ascending.
    fn later_neighbors(&self, v: usize) -> &[usize] {
        let nb = self.neighbors(v);
        &nb[nb.partition_point(|&w| w < v)..]
    }

    fn extend_clique<B>(
        &self,
        q: usize,
        candidates: &[usize],
        stack: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let need = q - stack.len();
        for (i, &v) in candidates.iter().enumerate() {
            if candidates.len() - i < need {
                break;
            }
            stack.push(v);
            if need == 1 {
                visit(stack)?;
            } else {
                let next: Vec<usize> = candidates[i + 1..]
                    .iter()
                    .copied()
                    .filter(|&w| self.has_edge(v, w))
                    .collect();
                if next.len() >= need - 1 {
                    self.extend_clique(q, &next, stack, visit)?;
                }
            }
            stack.pop();
        }
        ControlFlow::Continue(())
    }

    /// First `q`-clique (lexicographically) inside `within`, if any.
    pub fn find_clique_in(&self, within: &VertexSet, q: usize) -> Option<VertexSet> {
        let mut stack = Vec::with_capacity(q);
        if q == 0 {
            return Some(VertexSet::empty());
        }
        let found = self.extend_clique(q, within.members(), &mut stack, &mut |c: &[usize]| {
            ControlFlow::Break(VertexSet::new(c.to_vec()))
        });
        match found {
            ControlFlow::Break(c) => Some(c),
            ControlFlow::Continue(()) => None,
        }
    }

    /// Number of cliques of each size; entry 0 counts the empty clique.
    pub fn clique_counts(&self) -> Vec<u64> {
        let mut counts = vec![1u64];
        if self.n > 0 {
            counts.push(self.n as u64);
        }
        for v in 0..self.n {
            self.count_from(self.later_neighbors(v), 2, &mut counts);
        }
        counts
    }

    fn count_from(&self, candidates: &[usize], depth: usize, counts: &mut Vec<u64>) {
        for (i, &v) in candidates.iter().enumerate() {
            if counts.len() <= depth {
                counts.push(0);
            }
            counts[depth] += 1;
            let next: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&w| self.has_edge(v, w))
                .collect();
            self.count_from(&next, depth + 1, counts);
        }
    }
}
