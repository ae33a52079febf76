//! Exact search for the least fraction, among those with bounded numerator
//! and denominator, at which a monotone predicate turns false.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ratio::{format_fraction, Rational};

/// Above this many numerator/denominator pairs the candidates are walked in
/// the Stern-Brocot tree instead of being listed.
pub const MATERIALIZE_LIMIT: u64 = 1_000_000;

/// All reduced fractions `x/y` with `0 <= x <= x_max` and `1 <= y <= y_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CandidateSet {
    pub x_max: u64,
    pub y_max: u64,
}

impl CandidateSet {
    pub fn new(x_max: u64, y_max: u64) -> Result<Self> {
        if y_max == 0 {
            return Err(Error::InvalidParameter("denominator bound must be positive".into()));
        }
        if x_max > i64::MAX as u64 / 4 || y_max > i64::MAX as u64 / 4 {
            return Err(Error::Overflow("candidate bounds"));
        }
        Ok(CandidateSet { x_max, y_max })
    }

    pub fn contains(&self, r: &Rational) -> bool {
        r.is_zero() || (*r.numer() > 0 && (*r.numer() as u64) <= self.x_max && (*r.denom() as u64) <= self.y_max)
    }

    pub fn top(&self) -> Rational {
        Rational::from_integer(self.x_max as i64)
    }

    fn fits(&self, num: i64, den: i64) -> bool {
        den >= 1 && (num as u64) <= self.x_max && (den as u64) <= self.y_max
    }

    /// Upper bound on the predicate calls a search may make, counting the
    /// caller's single query at the top candidate.
    pub fn query_bound(&self) -> u32 {
        let product = self.x_max.saturating_mul(self.y_max);
        let log = if product <= 1 { 0 } else { u64::BITS - (product - 1).leading_zeros() };
        log + 2
    }

    pub fn is_materialized(&self) -> bool {
        self.x_max.saturating_mul(self.y_max) <= MATERIALIZE_LIMIT
    }

    /// Sorted, without duplicates.
    pub fn materialize(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero()];
        for y in 1..=self.y_max as i64 {
            for x in 1..=self.x_max as i64 {
                if x.gcd(&y) == 1 {
                    out.push(Rational::new_raw(x, y));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Records every answer and rejects any pair that breaks monotonicity.
struct Observed<F> {
    pred: F,
    seen: HashMap<Rational, bool>,
    max_true: Option<Rational>,
    min_false: Option<Rational>,
    calls: u32,
}

impl<F: FnMut(Rational) -> Result<bool>> Observed<F> {
    fn new(pred: F) -> Self {
        Observed {
            pred,
            seen: HashMap::new(),
            max_true: None,
            min_false: None,
            calls: 0,
        }
    }

    fn ask(&mut self, k: Rational) -> Result<bool> {
        if let Some(&v) = self.seen.get(&k) {
            return Ok(v);
        }
        self.calls += 1;
        let v = (self.pred)(k)?;
        self.seen.insert(k, v);
        if v {
            self.max_true = Some(self.max_true.map_or(k, |m| m.max(k)));
        } else {
            self.min_false = Some(self.min_false.map_or(k, |m| m.min(k)));
        }
        if let (Some(t), Some(f)) = (self.max_true, self.min_false) {
            if t >= f {
                return Err(Error::Inconsistent(format!(
                    "predicate true at {} but false at {}",
                    format_fraction(&t),
                    format_fraction(&f)
                )));
            }
        }
        Ok(v)
    }
}

/// Least candidate at which `pred` is false, given that `pred` is monotone
/// (true below some threshold, false from it on) and false at the top
/// candidate; the top is never queried. Returns the value and the number of
/// predicate calls made.
pub fn rational_binary_search(
    candidates: &CandidateSet,
    pred: impl FnMut(Rational) -> Result<bool>,
) -> Result<(Rational, u32)> {
    let mut obs = Observed::new(pred);
    let value = if candidates.is_materialized() {
        search_list(&candidates.materialize(), &mut obs)?
    } else {
        search_tree(candidates, &mut obs)?
    };
    Ok((value, obs.calls))
}

fn search_list<F: FnMut(Rational) -> Result<bool>>(list: &[Rational], obs: &mut Observed<F>) -> Result<Rational> {
    let (mut lo, mut hi) = (0, list.len() - 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if obs.ask(list[mid])? {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    Ok(list[lo])
}

/// Stern-Brocot descent. `(l, r)` are always neighbours in the tree with
/// `pred(l)` true and `pred(r)` false (`r` may be the formal `1/0`). Runs in
/// one direction are galloped so long runs cost logarithmically many calls.
fn search_tree<F: FnMut(Rational) -> Result<bool>>(c: &CandidateSet, obs: &mut Observed<F>) -> Result<Rational> {
    if !obs.ask(Rational::zero())? {
        return Ok(Rational::zero());
    }
    let (mut l, mut r) = ((0i64, 1i64), (1i64, 0i64));
    let top = c.top();
    let value = |(n, d): (i64, i64)| if d == 0 { top } else { Rational::new(n, d) };
    // Largest t >= 1 such that `a + t*b` fits and has predicate `want`,
    // given that t = 1 does; `t` = 0 means not even the first one.
    let run = |a: (i64, i64), b: (i64, i64), want: bool, obs: &mut Observed<F>| -> Result<i64> {
        let at = |t: i64| (a.0 + t * b.0, a.1 + t * b.1);
        let ok = |t: i64, obs: &mut Observed<F>| -> Result<bool> {
            let (n, d) = at(t);
            if !c.fits(n, d) {
                return Ok(false);
            }
            Ok(obs.ask(value((n, d)))? == want)
        };
        let (mut good, mut bad) = (1i64, 2i64);
        while ok(bad, obs)? {
            good = bad;
            bad = bad.saturating_mul(2);
        }
        while bad - good > 1 {
            let mid = good + (bad - good) / 2;
            if ok(mid, obs)? {
                good = mid;
            } else {
                bad = mid;
            }
        }
        Ok(good)
    };
    loop {
        let mediant = (l.0 + r.0, l.1 + r.1);
        if !c.fits(mediant.0, mediant.1) {
            if r.1 == 0 {
                return Err(Error::Inconsistent("predicate true at the top candidate".into()));
            }
            return Ok(value(r));
        }
        if obs.ask(value(mediant))? {
            let t = run(l, r, true, obs)?;
            l = (l.0 + t * r.0, l.1 + t * r.1);
        } else {
            let t = run(r, l, false, obs)?;
            r = (r.0 + t * l.0, r.1 + t * l.1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn tree(c: &CandidateSet, mut pred: impl FnMut(Rational) -> bool) -> Rational {
        let mut obs = Observed::new(|k| Ok(pred(k)));
        search_tree(c, &mut obs).unwrap()
    }

    #[test]
    fn small_candidate_set() {
        let c = CandidateSet::new(3, 4).unwrap();
        let list = c.materialize();
        assert_eq!(list.len(), 1 + 3 + 2 + 2 + 2);
        assert!(list.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(list.last(), Some(&q(3, 1)));
        assert!(list.contains(&q(3, 4)) && !list.contains(&q(5, 2)));
    }

    #[test]
    fn searches_least_false_candidate() {
        let c = CandidateSet::new(3, 4).unwrap();
        assert_eq!(rational_binary_search(&c, |k| Ok(k < q(3, 1))).unwrap().0, q(3, 1));
        // 5/2 is not a candidate; the next one up is 3/1.
        assert_eq!(rational_binary_search(&c, |k| Ok(k < q(5, 2))).unwrap().0, q(3, 1));
        assert_eq!(rational_binary_search(&c, |_| Ok(false)).unwrap().0, q(0, 1));
        assert_eq!(rational_binary_search(&c, |k| Ok(k < q(2, 3))).unwrap().0, q(2, 3));
        assert_eq!(rational_binary_search(&c, |k| Ok(k <= q(2, 3))).unwrap().0, q(3, 4));
    }

    #[test]
    fn query_count_within_bound() {
        for (x, y) in [(0, 1), (1, 2), (3, 4), (5, 6), (17, 18), (30, 31)] {
            let c = CandidateSet::new(x, y).unwrap();
            for target in c.materialize() {
                let (got, calls) = rational_binary_search(&c, |k| Ok(k < target)).unwrap();
                assert_eq!(got, target);
                // One query of the bound is reserved for the caller's infinity check.
                assert!(calls < c.query_bound(), "{x}/{y} target {target}: {calls}");
            }
        }
    }

    #[test]
    fn tree_descent_agrees_with_list() {
        for (x, y) in [(1, 1), (3, 4), (7, 8), (12, 5), (4, 13)] {
            let c = CandidateSet::new(x, y).unwrap();
            let list = c.materialize();
            for &target in &list {
                assert_eq!(tree(&c, |k| k < target), target);
                // Thresholds strictly between candidates.
                let off = target + q(1, 1000);
                let want = list.iter().copied().find(|&v| v >= off).unwrap_or(c.top());
                if off <= c.top() {
                    assert_eq!(tree(&c, |k| k < off), want, "{x}/{y} {off}");
                }
            }
        }
    }

    #[test]
    fn tree_descent_is_logarithmic_on_large_sets() {
        let c = CandidateSet::new(1 << 20, 1 << 20).unwrap();
        assert!(!c.is_materialized());
        for target in [q(0, 1), q(1, 1 << 20), q(3, 1), q(1 << 20, 1), q(355, 113), q(999_983, 1_000_003)] {
            let (got, calls) = rational_binary_search(&c, |k| Ok(k < target)).unwrap();
            assert_eq!(got, target);
            assert!(calls <= 4 * c.query_bound(), "{target}: {calls}");
        }
    }

    #[test]
    fn non_monotone_predicate_is_reported() {
        let mut obs = Observed::new(|k: Rational| Ok(k != q(1, 1)));
        assert!(obs.ask(q(1, 1)).is_ok());
        assert!(matches!(obs.ask(q(2, 1)), Err(Error::Inconsistent(_))));
    }
}
