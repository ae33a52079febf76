use super::{MatchingStatus, PerfectMatchingResult, WeightedGraph};
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: usize = 16;

const NONE: usize = usize::MAX;

/// Lazily yields every perfect matching of a graph exactly once.
///
/// Depth-first: the lowest uncovered vertex is paired with each of its
/// uncovered neighbours in turn.
pub struct PerfectMatchings {
    adj: Vec<Vec<(usize, i64)>>,
    mate: Vec<usize>,
    weight: Vec<i64>,
    stack: Vec<(usize, usize)>,
    empty_pending: bool,
}

/// Fails with `CapExceeded` when the graph has more than `cap` vertices.
pub fn enumerate_perfect_matchings(g: &WeightedGraph, cap: usize) -> Result<PerfectMatchings> {
    let nv = g.vertex_count();
    if nv > cap {
        return Err(Error::CapExceeded { size: nv, cap });
    }
    let mut adj = vec![Vec::new(); nv];
    for &(u, v, w) in g.edges() {
        adj[u].push((v, w));
        adj[v].push((u, w));
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let mut stack = Vec::new();
    if nv > 0 && nv.is_multiple_of(2) {
        stack.push((0, 0));
    }
    Ok(PerfectMatchings {
        adj,
        mate: vec![NONE; nv],
        weight: vec![0; nv],
        stack,
        empty_pending: nv == 0,
    })
}

impl PerfectMatchings {
    fn snapshot(&self) -> PerfectMatchingResult {
        let mut pairs = Vec::with_capacity(self.mate.len() / 2);
        let mut total = 0;
        for (u, &v) in self.mate.iter().enumerate() {
            if u < v {
                pairs.push((u, v));
                total += self.weight[u];
            }
        }
        PerfectMatchingResult {
            status: MatchingStatus::Found,
            pairs,
            total_weight: total,
        }
    }
}

impl Iterator for PerfectMatchings {
    type Item = PerfectMatchingResult;

    fn next(&mut self) -> Option<Self::Item> {
        if self.empty_pending {
            self.empty_pending = false;
            return Some(self.snapshot());
        }
        loop {
            let &mut (u, ref mut idx) = self.stack.last_mut()?;
            let prev = self.mate[u];
            if prev != NONE {
                self.mate[prev] = NONE;
                self.mate[u] = NONE;
            }
            let next = self.adj[u][*idx..]
                .iter()
                .position(|&(v, _)| self.mate[v] == NONE)
                .map(|off| *idx + off);
            let Some(i) = next else {
                self.stack.pop();
                continue;
            };
            *idx = i + 1;
            let (v, w) = self.adj[u][i];
            self.mate[u] = v;
            self.mate[v] = u;
            self.weight[u] = w;
            self.weight[v] = w;
            match self.mate.iter().position(|&m| m == NONE) {
                None => return Some(self.snapshot()),
                Some(free) => self.stack.push((free, 0)),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> WeightedGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v, (u * n + v) as i64));
            }
        }
        WeightedGraph::new(n, edges).unwrap()
    }

    #[test]
    fn double_factorial_counts() {
        assert_eq!(enumerate_perfect_matchings(&complete(2), 16).unwrap().count(), 1);
        assert_eq!(enumerate_perfect_matchings(&complete(4), 16).unwrap().count(), 3);
        assert_eq!(enumerate_perfect_matchings(&complete(6), 16).unwrap().count(), 15);
        assert_eq!(enumerate_perfect_matchings(&complete(8), 16).unwrap().count(), 105);
        assert_eq!(enumerate_perfect_matchings(&complete(5), 16).unwrap().count(), 0);
        assert_eq!(enumerate_perfect_matchings(&complete(0), 16).unwrap().count(), 1);
    }

    #[test]
    fn each_matching_once_and_weights_recomputed() {
        let g = complete(6);
        let all: Vec<_> = enumerate_perfect_matchings(&g, 16).unwrap().collect();
        let distinct: std::collections::HashSet<_> = all.iter().map(|r| r.pairs.clone()).collect();
        assert_eq!(distinct.len(), all.len());
        for r in &all {
            assert_eq!(g.perfect_matching_weight(&r.pairs).unwrap(), r.total_weight);
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_perfect_matchings(&complete(18), DEFAULT_ENUMERATION_CAP),
            Err(Error::CapExceeded { size: 18, cap: 16 })
        ));
    }
}
