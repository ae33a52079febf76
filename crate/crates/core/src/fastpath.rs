//! Cycle-based test for bipartite instances.
//!
//! When the acceptability graph is bipartite, so is the auxiliary graph, and
//! a positive-weight perfect matching exists iff there is a positive-weight
//! cycle alternating between reference edges and other edges. Orienting
//! reference edges from one part to the other and all remaining edges back
//! turns that into a plain directed positive-cycle search.

use std::collections::VecDeque;

use num_traits::Zero;

use crate::aux_graph::AuxGraph;
use crate::error::{Error, Result};
use crate::instance::{Gender, Instance, Kind};
use crate::ratio::{format_weight, Rational};

/// Two-colours the people: `true` for the side whose originals sit in the
/// first part. In marriage instances that is the men.
pub fn bipartition(inst: &Instance) -> Result<Vec<bool>> {
    if inst.kind() == Kind::Marriage {
        return Ok(inst.people().map(|a| inst.gender(a) == Some(Gender::Man)).collect());
    }
    let n = inst.n();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in inst.acceptable_pairs() {
        adj[a.0].push(b.0);
        adj[b.0].push(a.0);
    }
    let mut colour: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(true);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let cu = colour[u].unwrap_or(true);
            for &v in &adj[u] {
                match colour[v] {
                    None => {
                        colour[v] = Some(!cu);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return Err(Error::NotBipartite),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(colour.into_iter().map(|c| c.unwrap_or(true)).collect())
}

/// Directed version of an auxiliary graph with integer arc weights.
#[derive(Debug, Clone)]
pub struct OrientedAuxGraph {
    vertices: usize,
    first_part: Vec<bool>,
    arcs: Vec<(usize, usize, i64)>,
}

impl OrientedAuxGraph {
    pub fn new(inst: &Instance, g: &AuxGraph) -> Result<Self> {
        let side = bipartition(inst)?;
        let n = g.people();
        let first_part: Vec<bool> = (0..2 * n).map(|v| if v < n { side[v] } else { !side[v - n] }).collect();
        let (ig, _) = g.scale_to_integer()?;
        let mut arcs = Vec::with_capacity(ig.edges().len());
        for &(u, v, w) in ig.edges() {
            if first_part[u] == first_part[v] {
                return Err(Error::NotBipartite);
            }
            let (h1, h2) = if first_part[u] { (u, v) } else { (v, u) };
            if g.is_reference_edge(u, v) {
                arcs.push((h1, h2, w));
            } else {
                arcs.push((h2, h1, w));
            }
        }
        Ok(OrientedAuxGraph {
            vertices: 2 * n,
            first_part,
            arcs,
        })
    }

    pub fn in_first_part(&self, v: usize) -> bool {
        self.first_part[v]
    }

    pub fn arcs(&self) -> &[(usize, usize, i64)] {
        &self.arcs
    }

    /// The opposite convention: reference edges point into the first part.
    /// It has the same cycles, traversed backwards.
    pub fn reversed(&self) -> Self {
        OrientedAuxGraph {
            vertices: self.vertices,
            first_part: self.first_part.iter().map(|&b| !b).collect(),
            arcs: self.arcs.iter().map(|&(u, v, w)| (v, u, w)).collect(),
        }
    }

    /// Bellman-Ford on negated weights from a virtual source joined to every
    /// vertex. Returns a directed cycle of positive weight, if any.
    pub fn positive_cycle(&self) -> Option<Vec<usize>> {
        let nv = self.vertices;
        let mut dist = vec![0i128; nv];
        let mut pred = vec![usize::MAX; nv];
        let mut last = None;
        for _ in 0..=nv {
            last = None;
            for &(u, v, w) in &self.arcs {
                let cand = dist[u] - i128::from(w);
                if cand < dist[v] {
                    dist[v] = cand;
                    pred[v] = u;
                    last = Some(v);
                }
            }
            last?;
        }
        let mut x = last?;
        for _ in 0..nv {
            x = pred[x];
        }
        let mut cycle = vec![x];
        let mut y = pred[x];
        while y != x {
            cycle.push(y);
            y = pred[y];
        }
        cycle.reverse();
        Some(self.canonical(cycle))
    }

    /// A cycle through copies only has an identical mirror image through
    /// the originals, traversed the other way; prefer that one. Then start
    /// at the lowest first-part vertex, so the cycle opens with a reference
    /// edge.
    fn canonical(&self, mut cycle: Vec<usize>) -> Vec<usize> {
        let n = self.vertices / 2;
        if cycle.iter().all(|&v| v >= n) {
            cycle = cycle.into_iter().rev().map(|v| v - n).collect();
        }
        let start = cycle
            .iter()
            .enumerate()
            .filter(|&(_, &v)| self.first_part[v])
            .min_by_key(|&(_, &v)| v)
            .map_or(0, |(i, _)| i);
        cycle.rotate_left(start);
        cycle
    }
}

/// A positive alternating cycle, listed in arc order without repeating the
/// first vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWitness {
    pub vertices: Vec<usize>,
    pub weight: Rational,
}

impl CycleWitness {
    fn closed_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let len = self.vertices.len();
        (0..len).map(move |i| (self.vertices[i], self.vertices[(i + 1) % len]))
    }

    /// Reference matching with the cycle's edges flipped in or out.
    pub fn apply(&self, g: &AuxGraph) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = g.reference_matching().to_vec();
        for (u, v) in self.closed_edges() {
            let key = (u.min(v), u.max(v));
            match pairs.binary_search(&key) {
                Ok(i) => {
                    pairs.remove(i);
                }
                Err(i) => pairs.insert(i, key),
            }
        }
        pairs
    }

    /// `m1 -> w1 -> m2 -> w2 -> m1 (weight = 1)`.
    pub fn render(&self, inst: &Instance, g: &AuxGraph) -> String {
        let mut names: Vec<String> = self.vertices.iter().map(|&v| g.vertex_name(inst, v)).collect();
        if let Some(first) = names.first().cloned() {
            names.push(first);
        }
        format!("{} (weight = {})", names.join(" -> "), format_weight(&self.weight))
    }
}

#[derive(Debug, Clone)]
pub struct FastPathOutcome {
    pub positive: bool,
    pub witness: Option<CycleWitness>,
}

/// Whether `g` has a positive-weight perfect matching, decided by a
/// positive-cycle search. Fails with `NotBipartite` when it does not apply.
pub fn has_positive_cycle(inst: &Instance, g: &AuxGraph) -> Result<FastPathOutcome> {
    let oriented = OrientedAuxGraph::new(inst, g)?;
    let Some(vertices) = oriented.positive_cycle() else {
        return Ok(FastPathOutcome {
            positive: false,
            witness: None,
        });
    };
    let len = vertices.len();
    let weight = (0..len).try_fold(Rational::zero(), |acc, i| {
        g.weight(vertices[i], vertices[(i + 1) % len])
            .map(|w| acc + w)
            .ok_or_else(|| Error::Inconsistent("cycle uses a missing edge".into()))
    })?;
    if weight <= Rational::zero() {
        return Err(Error::Inconsistent(format!("extracted cycle has weight {}", format_weight(&weight))));
    }
    Ok(FastPathOutcome {
        positive: true,
        witness: Some(CycleWitness { vertices, weight }),
    })
}
