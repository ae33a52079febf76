//! Exact maximum-weight perfect matching on general graphs with signed
//! integer weights, plus a brute-force enumerator used as a test oracle.

mod blossom;
mod enumerate;

use std::collections::HashSet;

pub use enumerate::{enumerate_perfect_matchings, PerfectMatchings, DEFAULT_ENUMERATION_CAP};

use crate::error::{Error, Result};

/// Simple undirected graph with integer edge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    vertices: usize,
    edges: Vec<(usize, usize, i64)>,
}

impl WeightedGraph {
    /// Rejects self-loops, duplicate edges and out-of-range endpoints.
    pub fn new(vertices: usize, edges: Vec<(usize, usize, i64)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v, _) in &edges {
            if u >= vertices || v >= vertices {
                return Err(Error::MalformedGraph(format!(
                    "edge ({u}, {v}) out of range for {vertices} vertices"
                )));
            }
            if u == v {
                return Err(Error::MalformedGraph(format!("self-loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::MalformedGraph(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(WeightedGraph { vertices, edges })
    }

    /// Reads `e u v w` lines (1-based vertices). An optional `p <tag> V [E]`
    /// line fixes the vertex count; otherwise it is the largest endpoint.
    /// `c` lines and blank lines are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut declared = None;
        let mut edges = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = |message: String| Error::Parse {
                line: lineno,
                column: 1,
                message,
            };
            match toks.first().copied() {
                None | Some("c") => {}
                Some("p") => {
                    let v = toks
                        .get(2)
                        .and_then(|s| s.parse::<usize>().ok())
                        .ok_or_else(|| bad("expected `p <tag> <vertices> [edges]`".into()))?;
                    declared = Some(v);
                }
                Some("e") => {
                    if toks.len() != 4 {
                        return Err(bad("expected `e u v w`".into()));
                    }
                    let u: usize = toks[1].parse().map_err(|_| bad(format!("bad vertex `{}`", toks[1])))?;
                    let v: usize = toks[2].parse().map_err(|_| bad(format!("bad vertex `{}`", toks[2])))?;
                    let w: i64 = toks[3].parse().map_err(|_| bad(format!("bad weight `{}`", toks[3])))?;
                    if u == 0 || v == 0 {
                        return Err(bad("vertices are numbered from 1".into()));
                    }
                    edges.push((u - 1, v - 1, w));
                }
                Some(other) => return Err(bad(format!("unknown record `{other}`"))),
            }
        }
        let vertices = declared.unwrap_or_else(|| edges.iter().map(|e| e.0.max(e.1) + 1).max().unwrap_or(0));
        WeightedGraph::new(vertices, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize, i64)] {
        &self.edges
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<i64> {
        self.edges
            .iter()
            .find(|&&(a, b, _)| (a == u && b == v) || (a == v && b == u))
            .map(|e| e.2)
    }

    /// Same graph with every weight mapped through `f`.
    pub fn map_weights(&self, f: impl Fn(i64) -> i64) -> Self {
        WeightedGraph {
            vertices: self.vertices,
            edges: self.edges.iter().map(|&(u, v, w)| (u, v, f(w))).collect(),
        }
    }

    /// Sums the weights of `pairs`; fails if a pair is not an edge or the
    /// pairs are not a perfect matching.
    pub fn perfect_matching_weight(&self, pairs: &[(usize, usize)]) -> Result<i64> {
        let mut covered = vec![false; self.vertices];
        let mut total = 0i64;
        for &(u, v) in pairs {
            let w = self
                .weight(u, v)
                .ok_or_else(|| Error::NotPerfect(format!("({u}, {v}) is not an edge")))?;
            for x in [u, v] {
                if std::mem::replace(&mut covered[x], true) {
                    return Err(Error::NotPerfect(format!("vertex {x} covered twice")));
                }
            }
            total = total.checked_add(w).ok_or(Error::Overflow("summing matching weight"))?;
        }
        if let Some(x) = covered.iter().position(|&c| !c) {
            return Err(Error::NotPerfect(format!("vertex {x} uncovered")));
        }
        Ok(total)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchingStatus {
    Found,
    NoPerfectMatching,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectMatchingResult {
    pub status: MatchingStatus,
    /// Pairs `(u, v)` with `u < v`, sorted. Empty when no perfect matching exists.
    pub pairs: Vec<(usize, usize)>,
    pub total_weight: i64,
}

impl PerfectMatchingResult {
    fn none() -> Self {
        PerfectMatchingResult {
            status: MatchingStatus::NoPerfectMatching,
            pairs: Vec::new(),
            total_weight: 0,
        }
    }

    pub fn is_found(&self) -> bool {
        self.status == MatchingStatus::Found
    }
}

/// Maximum-weight perfect matching; negative weights are handled directly.
pub fn max_weight_perfect_matching(g: &WeightedGraph) -> Result<PerfectMatchingResult> {
    let nv = g.vertex_count();
    if nv % 2 == 1 {
        return Ok(PerfectMatchingResult::none());
    }
    if nv == 0 {
        return Ok(PerfectMatchingResult {
            status: MatchingStatus::Found,
            pairs: Vec::new(),
            total_weight: 0,
        });
    }
    let bound = g.edges().iter().map(|e| e.2.unsigned_abs()).max().unwrap_or(0);
    // Duals live in a 4x scale and move by at most a few multiples of the
    // largest weight per vertex.
    if bound > (i64::MAX as u64) / (16 * nv as u64) {
        return Err(Error::Overflow("solving matching with oversized weights"));
    }
    let mate = blossom::Solver::new(nv, g.edges()).solve();
    if mate.iter().any(Option::is_none) {
        return Ok(PerfectMatchingResult::none());
    }
    let pairs: Vec<(usize, usize)> = mate
        .iter()
        .enumerate()
        .filter_map(|(u, &v)| v.filter(|&v| u < v).map(|v| (u, v)))
        .collect();
    let total_weight = g.perfect_matching_weight(&pairs)?;
    Ok(PerfectMatchingResult {
        status: MatchingStatus::Found,
        pairs,
        total_weight,
    })
}

/// Solves `g` and `g + c` and checks the optimum moves by exactly `c * V / 2`.
pub fn cross_check_shift(g: &WeightedGraph, c: i64) -> Result<PerfectMatchingResult> {
    let base = max_weight_perfect_matching(g)?;
    let shifted = max_weight_perfect_matching(&g.map_weights(|w| w + c))?;
    let expected = base.total_weight + c * (g.vertex_count() as i64 / 2);
    if base.status != shifted.status || (base.is_found() && shifted.total_weight != expected) {
        return Err(Error::Inconsistent(format!(
            "shift by {c}: optimum {} became {}, expected {expected}",
            base.total_weight, shifted.total_weight
        )));
    }
    Ok(base)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(nv: usize, edges: &[(usize, usize, i64)]) -> PerfectMatchingResult {
        max_weight_perfect_matching(&WeightedGraph::new(nv, edges.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn single_negative_edge() {
        let r = solve(2, &[(0, 1, -7)]);
        assert_eq!(r.pairs, vec![(0, 1)]);
        assert_eq!(r.total_weight, -7);
    }

    #[test]
    fn four_cycle_takes_heavier_opposite_pair() {
        // Cycle 0-1-2-3-0 with weights 1, 2, 3, 4: {1+3} vs {2+4}.
        let r = solve(4, &[(0, 1, 1), (1, 2, 2), (2, 3, 3), (3, 0, 4)]);
        assert_eq!(r.total_weight, 6);
        assert_eq!(r.pairs, vec![(0, 3), (1, 2)]);
    }

    #[test]
    fn negative_weights_prefer_full_cardinality() {
        // Max-weight matching would take (1,2) alone; perfect forces the rest.
        let r = solve(4, &[(0, 1, 2), (0, 2, -2), (1, 2, 1), (1, 3, -1), (2, 3, -6)]);
        assert_eq!(r.pairs, vec![(0, 2), (1, 3)]);
        assert_eq!(r.total_weight, -3);
    }

    #[test]
    fn no_perfect_matching() {
        assert_eq!(solve(3, &[(0, 1, 1), (1, 2, 1)]).status, MatchingStatus::NoPerfectMatching);
        assert_eq!(solve(4, &[(0, 1, 1), (0, 2, 1), (0, 3, 1)]).status, MatchingStatus::NoPerfectMatching);
        assert_eq!(solve(2, &[]).status, MatchingStatus::NoPerfectMatching);
        assert!(solve(0, &[]).is_found());
    }

    #[test]
    fn blossom_cases() {
        // Classic positive-weight cases that exercise blossom creation,
        // relabeling and expansion; all admit a perfect matching on 1..=n.
        type Case = (&'static [(usize, usize, i64)], i64);
        let cases: &[Case] = &[
            (&[(1, 2, 8), (1, 3, 9), (2, 3, 10), (3, 4, 7), (1, 6, 5), (4, 5, 6)], 10 + 6 + 5),
            (&[(1, 2, 9), (1, 3, 8), (2, 3, 10), (1, 4, 5), (4, 5, 4), (1, 6, 3)], 10 + 4 + 3),
            (&[(1, 2, 9), (1, 3, 9), (2, 3, 10), (2, 4, 8), (3, 5, 8), (4, 5, 10), (5, 6, 6)], 9 + 8 + 6),
            (
                &[(1, 2, 45), (1, 5, 45), (2, 3, 50), (3, 4, 45), (4, 5, 50), (1, 6, 30), (3, 9, 35), (4, 8, 35), (5, 7, 26), (9, 10, 5)],
                30 + 50 + 35 + 26 + 5,
            ),
            (
                &[(1, 2, 45), (1, 7, 45), (2, 3, 50), (3, 4, 45), (4, 5, 95), (4, 6, 94), (5, 6, 94), (6, 7, 50), (1, 8, 30), (3, 11, 35), (5, 9, 36), (7, 10, 26), (11, 12, 5)],
                30 + 50 + 94 + 36 + 26 + 5,
            ),
        ];
        for (edges, want) in cases {
            let shifted: Vec<_> = edges.iter().map(|&(u, v, w)| (u - 1, v - 1, w)).collect();
            let nv = shifted.iter().map(|e| e.0.max(e.1) + 1).max().unwrap();
            let r = solve(nv, &shifted);
            assert!(r.is_found());
            assert_eq!(r.total_weight, *want, "{edges:?}");
        }
    }

    #[test]
    fn malformed_graphs_are_rejected() {
        assert!(WeightedGraph::new(2, vec![(0, 0, 1)]).is_err());
        assert!(WeightedGraph::new(2, vec![(0, 1, 1), (1, 0, 2)]).is_err());
        assert!(WeightedGraph::new(2, vec![(0, 2, 1)]).is_err());
    }

    #[test]
    fn edge_list_ingestion() {
        let g = WeightedGraph::parse_edge_list("c four-cycle\np edge 4 4\ne 1 2 1\ne 2 3 2\ne 3 4 3\ne 4 1 4\n").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(max_weight_perfect_matching(&g).unwrap().total_weight, 6);
        assert!(WeightedGraph::parse_edge_list("e 1 1 3\n").is_err());
        assert!(WeightedGraph::parse_edge_list("e 0 1 3\n").is_err());
        assert!(WeightedGraph::parse_edge_list("x\n").is_err());
    }

    #[test]
    fn shift_identity() {
        let g = WeightedGraph::new(4, vec![(0, 1, 1), (1, 2, -2), (2, 3, 3), (3, 0, 4), (0, 2, -5)]).unwrap();
        for c in [-10, -1, 0, 3, 100] {
            cross_check_shift(&g, c).unwrap();
        }
    }
}
