//! Unpopularity factor, unpopularity margin and popularity test.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::aux_graph::{build_aux_graph, decompose_pm_weight, AuxGraph, Decomposition};
use crate::error::{Error, Result};
use crate::fastpath::has_positive_cycle;
use crate::instance::{Instance, Kind, Matching};
use crate::mwpm::max_weight_perfect_matching;
use crate::ratio::{format_fraction, Factor, Rational};
use crate::search::{rational_binary_search, CandidateSet};

/// Keeps every intermediate product of weights and thresholds well inside
/// `i64`.
pub const MAX_TOTAL_WEIGHT: u64 = 1 << 24;

/// How the `u(M) > k` predicate is decided.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum FastPath {
    /// Cycle search for marriage instances, matching solver otherwise.
    #[default]
    Auto,
    /// Always the cycle search; fails on non-bipartite instances.
    On,
    /// Always the matching solver.
    Off,
    /// Both, failing if they disagree. Falls back to the solver alone when
    /// the instance is not bipartite.
    Verify,
}

impl FromStr for FastPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(FastPath::Auto),
            "on" => Ok(FastPath::On),
            "off" => Ok(FastPath::Off),
            "verify" => Ok(FastPath::Verify),
            _ => Err(Error::InvalidParameter(format!("unknown fast path mode `{s}`"))),
        }
    }
}

/// Outcome of one `u(M) > k` query.
#[derive(Debug, Clone)]
pub struct Predicate {
    pub holds: bool,
    /// A rival `M'` with `phi(M', M) > k * phi(M, M')` when `holds`.
    pub witness: Option<Matching>,
}

fn check_weights(inst: &Instance) -> Result<()> {
    if inst.total_weight() > MAX_TOTAL_WEIGHT {
        return Err(Error::Unsupported(format!(
            "total voter weight {} exceeds {MAX_TOTAL_WEIGHT}",
            inst.total_weight()
        )));
    }
    Ok(())
}

fn check_matching(inst: &Instance, m: &Matching) -> Result<()> {
    if m.n() != inst.n() {
        return Err(Error::InvalidParameter(format!(
            "matching is over {} people, instance has {}",
            m.n(),
            inst.n()
        )));
    }
    inst.validate_matching(m).map_err(Error::InvalidMatching)
}

fn witness_from(inst: &Instance, m: &Matching, g: &AuxGraph, pairs: &[(usize, usize)]) -> Result<Matching> {
    let d: Decomposition = decompose_pm_weight(inst, m, g, pairs)?;
    if !d.identity_holds() || !d.same_singles {
        return Err(Error::Inconsistent("perfect matching does not decompose as expected".into()));
    }
    let (rival, margin) = d.better_side();
    if margin <= Rational::zero() {
        return Err(Error::Inconsistent("positive matching with no improving side".into()));
    }
    let rival = rival.clone();
    let gain = Rational::from_integer(inst.phi(&rival, m) as i64);
    let loss = Rational::from_integer(inst.phi(m, &rival) as i64);
    if gain <= g.k() * loss {
        return Err(Error::Inconsistent("witness does not beat the threshold".into()));
    }
    Ok(rival)
}

fn general_predicate(inst: &Instance, m: &Matching, g: &AuxGraph) -> Result<Predicate> {
    let (ig, _) = g.scale_to_integer()?;
    let best = max_weight_perfect_matching(&ig)?;
    if !best.is_found() {
        return Err(Error::Inconsistent("auxiliary graph has no perfect matching".into()));
    }
    if best.total_weight <= 0 {
        return Ok(Predicate {
            holds: false,
            witness: None,
        });
    }
    Ok(Predicate {
        holds: true,
        witness: Some(witness_from(inst, m, g, &best.pairs)?),
    })
}

fn cycle_predicate(inst: &Instance, m: &Matching, g: &AuxGraph) -> Result<Predicate> {
    let out = has_positive_cycle(inst, g)?;
    let witness = match &out.witness {
        Some(cycle) => Some(witness_from(inst, m, g, &cycle.apply(g))?),
        None => None,
    };
    Ok(Predicate {
        holds: out.positive,
        witness,
    })
}

/// Decides `u(M) > k`.
pub fn predicate_gt(inst: &Instance, m: &Matching, k: Rational, mode: FastPath) -> Result<Predicate> {
    check_weights(inst)?;
    check_matching(inst, m)?;
    let g = build_aux_graph(inst, m, k)?;
    match mode {
        FastPath::Off => general_predicate(inst, m, &g),
        FastPath::On => cycle_predicate(inst, m, &g),
        FastPath::Auto if inst.kind() == Kind::Marriage => cycle_predicate(inst, m, &g),
        FastPath::Auto => general_predicate(inst, m, &g),
        FastPath::Verify => {
            let general = general_predicate(inst, m, &g)?;
            match cycle_predicate(inst, m, &g) {
                Ok(cycle) if cycle.holds != general.holds => Err(Error::Inconsistent(format!(
                    "at k = {}: cycle search says {}, matching solver says {}",
                    format_fraction(&k),
                    cycle.holds,
                    general.holds
                ))),
                Ok(_) | Err(Error::NotBipartite) => Ok(general),
                Err(e) => Err(e),
            }
        }
    }
}

/// Candidate bounds: a finite factor is `phi(M', M) / phi(M, M')` with a
/// positive denominator of at most the total weight `W`, and a numerator of
/// at most `W` minus the smallest positive weight.
pub fn candidate_set(inst: &Instance) -> Result<CandidateSet> {
    let total = inst.total_weight();
    let min_positive = inst.weights().iter().copied().filter(|&w| w > 0).min();
    match min_positive {
        Some(w) => CandidateSet::new(total - u64::from(w), total),
        None => CandidateSet::new(0, 1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorReport {
    pub factor: Factor,
    /// Every rival ties with `M` on every voter, so the maximum is over an
    /// empty set; the factor is reported as zero.
    pub zero_by_convention: bool,
    pub margin: u64,
    pub popular: bool,
    /// A rival attaining the factor, when one exists.
    pub witness: Option<Matching>,
    /// Predicate evaluations made by the factor search.
    pub queries: u32,
    pub candidates: CandidateSet,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    factor_num: Option<i64>,
    factor_den: Option<i64>,
    is_infinite: bool,
    zero_by_convention: bool,
    margin: u64,
    popular: bool,
    witness_pairs: Option<Vec<[&'a str; 2]>>,
    predicate_queries: u32,
    x_max: u64,
    y_max: u64,
}

fn pair_names<'a>(inst: &'a Instance, m: &Matching) -> Vec<[&'a str; 2]> {
    m.pairs().iter().map(|&(a, b)| [inst.name(a), inst.name(b)]).collect()
}

impl FactorReport {
    pub fn to_json(&self, inst: &Instance) -> serde_json::Value {
        let finite = self.factor.finite();
        let doc = ReportJson {
            factor_num: finite.map(|r| *r.numer()),
            factor_den: finite.map(|r| *r.denom()),
            is_infinite: self.factor.is_infinite(),
            zero_by_convention: self.zero_by_convention,
            margin: self.margin,
            popular: self.popular,
            witness_pairs: self.witness.as_ref().map(|w| pair_names(inst, w)),
            predicate_queries: self.queries,
            x_max: self.candidates.x_max,
            y_max: self.candidates.y_max,
        };
        serde_json::to_value(doc).expect("report serializes")
    }

    pub fn to_text(&self, inst: &Instance) -> String {
        let mut out = String::new();
        let note = if self.zero_by_convention { " (no rival differs for any voter)" } else { "" };
        let _ = writeln!(out, "factor: {}{note}", self.factor);
        let _ = writeln!(out, "margin: {}", self.margin);
        let _ = writeln!(out, "popular: {}", if self.popular { "yes" } else { "no" });
        match &self.witness {
            Some(w) if w.is_empty() => {
                let _ = writeln!(out, "witness: (empty matching)");
            }
            Some(w) => {
                let pairs: Vec<String> = pair_names(inst, w).iter().map(|p| p.join(" ")).collect();
                let _ = writeln!(out, "witness: {}", pairs.join(", "));
            }
            None => {
                let _ = writeln!(out, "witness: none");
            }
        }
        let _ = writeln!(out, "predicate queries: {}", self.queries);
        out
    }
}

/// Exact `u(M)` together with `g(M)` and the popularity verdict.
pub fn unpopularity_factor(inst: &Instance, m: &Matching, mode: FastPath) -> Result<FactorReport> {
    check_weights(inst)?;
    check_matching(inst, m)?;
    let candidates = candidate_set(inst)?;

    let mut best: Option<(Factor, Matching)> = None;
    let mut query = |k: Rational| -> Result<bool> {
        let p = predicate_gt(inst, m, k, mode)?;
        if let Some(w) = p.witness {
            let d = inst.delta(m, &w);
            if d <= Factor::Finite(k) {
                return Err(Error::Inconsistent(format!(
                    "witness at k = {} only reaches {d}",
                    format_fraction(&k)
                )));
            }
            if best.as_ref().is_none_or(|(b, _)| d > *b) {
                best = Some((d, w));
            }
        }
        Ok(p.holds)
    };

    let (factor, queries) = if query(candidates.top())? {
        (Factor::Infinite, 1)
    } else {
        let (f, calls) = rational_binary_search(&candidates, &mut query)?;
        (Factor::Finite(f), calls + 1)
    };

    let mut zero_by_convention = false;
    let witness = if factor == Factor::zero() {
        // Unmatching everyone leaves the singles as they were and hurts
        // each matched voter, so it realises a zero ratio unless no matched
        // voter has weight.
        let empty = Matching::empty(inst.n());
        if inst.phi(m, &empty) > 0 {
            Some(empty)
        } else {
            zero_by_convention = true;
            None
        }
    } else {
        match best {
            Some((d, w)) if d == factor => Some(w),
            Some((d, _)) => {
                return Err(Error::Inconsistent(format!("best witness reaches {d}, search returned {factor}")));
            }
            None => return Err(Error::Inconsistent(format!("no witness for factor {factor}"))),
        }
    };

    let margin = unpopularity_margin(inst, m)?.margin;
    let popular = factor <= Factor::Finite(Rational::one());
    if popular != (margin == 0) {
        return Err(Error::Inconsistent(format!("factor {factor} but margin {margin}")));
    }
    Ok(FactorReport {
        factor,
        zero_by_convention,
        margin,
        popular,
        witness,
        queries,
        candidates,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarginReport {
    pub margin: u64,
    /// A rival attaining the margin (possibly `M` itself).
    pub witness: Matching,
}

/// `g(M) = max phi(M', M) - phi(M, M')`: half the heaviest perfect matching
/// of the auxiliary graph at `k = 1`.
pub fn unpopularity_margin(inst: &Instance, m: &Matching) -> Result<MarginReport> {
    check_weights(inst)?;
    check_matching(inst, m)?;
    let g = build_aux_graph(inst, m, Rational::one())?;
    let (ig, _) = g.scale_to_integer()?;
    let best = max_weight_perfect_matching(&ig)?;
    if !best.is_found() {
        return Err(Error::Inconsistent("auxiliary graph has no perfect matching".into()));
    }
    let total = best.total_weight;
    if total < 0 || total % 2 != 0 {
        return Err(Error::Inconsistent(format!("heaviest perfect matching weighs {total}")));
    }
    let d = decompose_pm_weight(inst, m, &g, &best.pairs)?;
    let half = Rational::from_integer(total / 2);
    if !d.identity_holds() || d.first_margin != half || d.second_margin != half {
        return Err(Error::Inconsistent("optimal perfect matching splits unevenly".into()));
    }
    let margin = (total / 2) as u64;
    let witness = d.first;
    let achieved = inst.phi(&witness, m) as i64 - inst.phi(m, &witness) as i64;
    if achieved != total / 2 {
        return Err(Error::Inconsistent("margin witness does not attain the margin".into()));
    }
    Ok(MarginReport { margin, witness })
}

/// `u(M) <= 1`, decided with a single query at `k = 1`.
pub fn is_popular(inst: &Instance, m: &Matching, mode: FastPath) -> Result<bool> {
    Ok(!predicate_gt(inst, m, Rational::one(), mode)?.holds)
}
