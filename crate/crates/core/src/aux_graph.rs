//! The doubled auxiliary graph whose positive-weight perfect matchings
//! certify that some rival matching beats `M` by more than a factor `k`.
//!
//! Vertex `i` is person `i`; vertex `n + i` is that person's copy. Every
//! mutually acceptable pair `{i, j}` appears twice, once between originals
//! and once between copies, with the same weight. Each person is linked to
//! their own copy.

use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::instance::{Instance, Matching, PersonId};
use crate::mwpm::WeightedGraph;
use crate::ratio::{format_fraction, format_weight, is_non_negative, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Original,
    Copy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AuxVertex {
    pub person: PersonId,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxEdge {
    pub u: usize,
    pub v: usize,
    pub weight: Rational,
}

#[derive(Debug, Clone)]
pub struct AuxGraph {
    n: usize,
    k: Rational,
    edges: Vec<AuxEdge>,
    reference: Vec<(usize, usize)>,
}

/// Contribution of person `i` to the weight of edge `{i, j}`:
/// `w(i)` if `i` is single in `m` or prefers `j` to their partner, `-k w(i)`
/// if `i` prefers their partner, and zero if `{i, j}` is in `m` or `i` is
/// indifferent.
pub fn delta_term(inst: &Instance, m: &Matching, i: PersonId, j: PersonId, k: Rational) -> Result<Rational> {
    if !inst.is_acceptable(i, j) {
        return Err(Error::NotAcceptable(i.0, j.0));
    }
    let w = Rational::from_integer(i64::from(inst.weight(i)));
    if m.contains(i, j) {
        return Ok(Rational::zero());
    }
    let Some(partner) = m.partner(i) else {
        return Ok(w);
    };
    let to_j = inst.rank_of(i, Some(j));
    let to_partner = inst.rank_of(i, Some(partner));
    Ok(match to_j.cmp(&to_partner) {
        std::cmp::Ordering::Less => w,
        std::cmp::Ordering::Greater => -k * w,
        std::cmp::Ordering::Equal => Rational::zero(),
    })
}

/// Builds the auxiliary graph of `m` for threshold `k >= 0`.
pub fn build_aux_graph(inst: &Instance, m: &Matching, k: Rational) -> Result<AuxGraph> {
    if !is_non_negative(&k) {
        return Err(Error::InvalidParameter(format!("k = {} is negative", format_fraction(&k))));
    }
    if m.n() != inst.n() {
        return Err(Error::InvalidParameter("matching belongs to another instance".into()));
    }
    inst.validate_matching(m).map_err(Error::InvalidMatching)?;
    let n = inst.n();
    let pairs = inst.acceptable_pairs();
    let mut edges = Vec::with_capacity(2 * pairs.len() + n);
    let mut pair_weights = Vec::with_capacity(pairs.len());
    for &(i, j) in pairs {
        let w = delta_term(inst, m, i, j, k)? + delta_term(inst, m, j, i, k)?;
        pair_weights.push(w);
        edges.push(AuxEdge { u: i.0, v: j.0, weight: w });
    }
    for (&(i, j), &w) in pairs.iter().zip(&pair_weights) {
        edges.push(AuxEdge {
            u: n + i.0,
            v: n + j.0,
            weight: w,
        });
    }
    for a in inst.people() {
        let weight = if m.is_matched(a) {
            -k * Rational::from_integer(2 * i64::from(inst.weight(a)))
        } else {
            Rational::zero()
        };
        edges.push(AuxEdge { u: a.0, v: n + a.0, weight });
    }

    let mut reference = Vec::with_capacity(n);
    for &(a, b) in m.pairs() {
        reference.push((a.0, b.0));
        reference.push((n + a.0, n + b.0));
    }
    for a in inst.people().filter(|&a| !m.is_matched(a)) {
        reference.push((a.0, n + a.0));
    }
    reference.sort_unstable();

    Ok(AuxGraph { n, k, edges, reference })
}

impl AuxGraph {
    pub fn k(&self) -> Rational {
        self.k
    }

    /// Number of people; the graph has twice as many vertices.
    pub fn people(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.n
    }

    pub fn vertex(&self, idx: usize) -> AuxVertex {
        if idx < self.n {
            AuxVertex {
                person: PersonId(idx),
                side: Side::Original,
            }
        } else {
            AuxVertex {
                person: PersonId(idx - self.n),
                side: Side::Copy,
            }
        }
    }

    pub fn vertex_name(&self, inst: &Instance, idx: usize) -> String {
        let v = self.vertex(idx);
        match v.side {
            Side::Original => inst.name(v.person).to_string(),
            Side::Copy => format!("{}'", inst.name(v.person)),
        }
    }

    pub fn edges(&self) -> &[AuxEdge] {
        &self.edges
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<Rational> {
        self.edges
            .iter()
            .find(|e| (e.u == u && e.v == v) || (e.u == v && e.v == u))
            .map(|e| e.weight)
    }

    /// The perfect matching induced by `M`: its pairs, their copies, and
    /// a person-to-copy link for everyone single in `M`.
    pub fn reference_matching(&self) -> &[(usize, usize)] {
        &self.reference
    }

    pub fn is_reference_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.reference.binary_search(&key).is_ok()
    }

    /// Exact weight of a set of pairs, which must all be edges.
    pub fn pairs_weight(&self, pairs: &[(usize, usize)]) -> Result<Rational> {
        pairs.iter().try_fold(Rational::zero(), |acc, &(u, v)| {
            self.weight(u, v)
                .map(|w| acc + w)
                .ok_or_else(|| Error::NotPerfect(format!("({u}, {v}) is not an edge")))
        })
    }

    /// Multiplies every weight by the denominator of `k`, which clears all
    /// denominators and preserves the sign of every matching or cycle weight.
    pub fn scale_to_integer(&self) -> Result<(WeightedGraph, i64)> {
        let scale = *self.k.denom();
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let scaled = e
                .weight
                .numer()
                .checked_mul(scale / e.weight.denom())
                .ok_or(Error::Overflow("scaling auxiliary weights"))?;
            debug_assert_eq!(scale % e.weight.denom(), 0);
            edges.push((e.u, e.v, scaled));
        }
        Ok((WeightedGraph::new(self.vertex_count(), edges)?, scale))
    }

    /// Plain-text edge list: original edges, copy edges, then person-copy
    /// links, one `u v weight` line each.
    pub fn dump(&self, inst: &Instance) -> String {
        let mut out = format!("# auxiliary graph k={}\n", format_fraction(&self.k));
        for e in &self.edges {
            let _ = writeln!(
                out,
                "{} {} {}",
                self.vertex_name(inst, e.u),
                self.vertex_name(inst, e.v),
                format_weight(&e.weight)
            );
        }
        out
    }
}

/// People of one side of a decomposed perfect matching, grouped by how they
/// fare against `M`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Comparison {
    /// Matched in the rival and single in `M` or strictly better off.
    pub improved: Vec<PersonId>,
    /// Matched in the rival and strictly worse off.
    pub worsened: Vec<PersonId>,
    /// Single in the rival but matched in `M`.
    pub dropped: Vec<PersonId>,
}

impl Comparison {
    fn of(inst: &Instance, m: &Matching, rival: &Matching) -> Self {
        let mut c = Comparison::default();
        for a in inst.people() {
            match (rival.partner(a), m.partner(a)) {
                (Some(_), None) => c.improved.push(a),
                (Some(r), Some(p)) => match inst.rank_of(a, Some(r)).cmp(&inst.rank_of(a, Some(p))) {
                    std::cmp::Ordering::Less => c.improved.push(a),
                    std::cmp::Ordering::Greater => c.worsened.push(a),
                    std::cmp::Ordering::Equal => {}
                },
                (None, Some(_)) => c.dropped.push(a),
                (None, None) => {}
            }
        }
        c
    }

    fn weight(inst: &Instance, people: &[PersonId]) -> i64 {
        people.iter().map(|&a| i64::from(inst.weight(a))).sum()
    }

    /// `phi(rival, M)`.
    pub fn gain(&self, inst: &Instance) -> i64 {
        Self::weight(inst, &self.improved)
    }

    /// `phi(M, rival)`.
    pub fn loss(&self, inst: &Instance) -> i64 {
        Self::weight(inst, &self.worsened) + Self::weight(inst, &self.dropped)
    }
}

/// Result of splitting a perfect matching of the auxiliary graph into its
/// original-side and copy-side matchings.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub first: Matching,
    pub second: Matching,
    pub first_sets: Comparison,
    pub second_sets: Comparison,
    /// Weight of the perfect matching in the graph.
    pub weight: Rational,
    /// `phi(first, M) - k * phi(M, first)`.
    pub first_margin: Rational,
    /// `phi(second, M) - k * phi(M, second)`.
    pub second_margin: Rational,
    /// Both sides leave exactly the same people single.
    pub same_singles: bool,
}

impl Decomposition {
    /// The weight equals the sum of the two sides' margins.
    pub fn identity_holds(&self) -> bool {
        self.weight == self.first_margin + self.second_margin
    }

    /// A side whose margin is positive, preferring the larger one.
    pub fn better_side(&self) -> (&Matching, Rational) {
        if self.first_margin >= self.second_margin {
            (&self.first, self.first_margin)
        } else {
            (&self.second, self.second_margin)
        }
    }
}

/// Splits a perfect matching `pairs` of `g` (built from `inst` and `m`).
pub fn decompose_pm_weight(inst: &Instance, m: &Matching, g: &AuxGraph, pairs: &[(usize, usize)]) -> Result<Decomposition> {
    let n = g.people();
    let mut covered = vec![false; 2 * n];
    for &(u, v) in pairs {
        for x in [u, v] {
            if x >= 2 * n || std::mem::replace(&mut covered[x], true) {
                return Err(Error::NotPerfect(format!("vertex {x} out of range or covered twice")));
            }
        }
    }
    if let Some(x) = covered.iter().position(|&c| !c) {
        return Err(Error::NotPerfect(format!("vertex {x} uncovered")));
    }
    let weight = g.pairs_weight(pairs)?;

    let mut first = Vec::new();
    let mut second = Vec::new();
    for &(u, v) in pairs {
        let (u, v) = (u.min(v), u.max(v));
        if v < n {
            first.push((PersonId(u), PersonId(v)));
        } else if u >= n {
            second.push((PersonId(u - n), PersonId(v - n)));
        } else if v != u + n {
            return Err(Error::NotPerfect(format!("({u}, {v}) crosses sides")));
        }
    }
    let first = Matching::from_valid_pairs(n, first);
    let second = Matching::from_valid_pairs(n, second);
    let same_singles = inst.people().all(|a| first.is_matched(a) == second.is_matched(a));
    let first_sets = Comparison::of(inst, m, &first);
    let second_sets = Comparison::of(inst, m, &second);
    let k = g.k();
    let margin = |c: &Comparison| Rational::from_integer(c.gain(inst)) - k * Rational::from_integer(c.loss(inst));
    Ok(Decomposition {
        first_margin: margin(&first_sets),
        second_margin: margin(&second_sets),
        first,
        second,
        first_sets,
        second_sets,
        weight,
        same_singles,
    })
}
