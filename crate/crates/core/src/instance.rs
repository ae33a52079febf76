//! Roommates and marriage instances with ties and voter weights, matchings,
//! and the pairwise comparison counts between matchings.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result, Violation};
use crate::ratio::{Factor, Rational};

/// Dense index of a person, `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PersonId(pub usize);

impl PersonId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for PersonId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Roommates: any two mutually acceptable people may pair.
    Roommates,
    /// Marriage: only opposite-gender pairs.
    Marriage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gender {
    Man,
    Woman,
}

/// Extended rank: tier index starting at 1, or `Unranked` for an unlisted
/// partner and for being single. Ordering puts every tier before `Unranked`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rank {
    Tier(u32),
    Unranked,
}

/// Ordered tiers of equally ranked acceptable partners, best tier first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PreferenceList {
    tiers: Vec<Vec<PersonId>>,
}

impl PreferenceList {
    pub fn new(tiers: Vec<Vec<PersonId>>) -> Self {
        PreferenceList { tiers }
    }

    /// Strict list: one person per tier.
    pub fn strict(order: impl IntoIterator<Item = PersonId>) -> Self {
        PreferenceList {
            tiers: order.into_iter().map(|p| vec![p]).collect(),
        }
    }

    pub fn tiers(&self) -> &[Vec<PersonId>] {
        &self.tiers
    }

    pub fn len(&self) -> usize {
        self.tiers.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.tiers.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = PersonId> + '_ {
        self.tiers.iter().flatten().copied()
    }

    pub fn has_ties(&self) -> bool {
        self.tiers.iter().any(|t| t.len() > 1)
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    kind: Kind,
    names: Vec<String>,
    prefs: Vec<PreferenceList>,
    genders: Option<Vec<Gender>>,
    weights: Vec<u32>,
    ranks: Vec<HashMap<usize, u32>>,
    edges: Vec<(PersonId, PersonId)>,
}

impl Instance {
    /// Builds and validates an instance. `genders` is required for marriage
    /// instances and ignored otherwise; `weights` defaults to all ones.
    pub fn new(
        kind: Kind,
        names: Vec<String>,
        prefs: Vec<PreferenceList>,
        genders: Option<Vec<Gender>>,
        weights: Option<Vec<u32>>,
    ) -> Result<Self> {
        let n = names.len();
        if prefs.len() != n {
            return Err(Error::InvalidParameter(format!(
                "{} preference lists for {n} people",
                prefs.len()
            )));
        }
        let weights = weights.unwrap_or_else(|| vec![1; n]);
        if weights.len() != n {
            return Err(Error::InvalidParameter(format!(
                "{} weights for {n} people",
                weights.len()
            )));
        }
        let genders = match kind {
            Kind::Roommates => None,
            Kind::Marriage => match genders {
                Some(g) if g.len() == n => Some(g),
                Some(g) => {
                    return Err(Error::InvalidParameter(format!(
                        "{} genders for {n} people",
                        g.len()
                    )))
                }
                None => {
                    return Err(Error::InvalidParameter(
                        "marriage instance without genders".into(),
                    ))
                }
            },
        };

        let mut ranks = vec![HashMap::new(); n];
        for (a, list) in prefs.iter().enumerate() {
            for (t, tier) in list.tiers.iter().enumerate() {
                if tier.is_empty() {
                    return Err(Error::InvalidParameter(format!(
                        "{}: empty tie group",
                        names[a]
                    )));
                }
                for &b in tier {
                    if b.0 >= n {
                        return Err(Error::InvalidParameter(format!(
                            "{}: unknown person {b}",
                            names[a]
                        )));
                    }
                    if b.0 == a {
                        return Err(Error::InvalidParameter(format!(
                            "{} lists itself",
                            names[a]
                        )));
                    }
                    if let Some(g) = &genders {
                        if g[a] == g[b.0] {
                            return Err(Error::InvalidParameter(format!(
                                "{} lists {} of the same gender",
                                names[a], names[b.0]
                            )));
                        }
                    }
                    if ranks[a].insert(b.0, t as u32 + 1).is_some() {
                        return Err(Error::InvalidParameter(format!(
                            "{} lists {} twice",
                            names[a], names[b.0]
                        )));
                    }
                }
            }
        }

        let mut edges = Vec::new();
        for i in 0..n {
            for &j in ranks[i].keys() {
                if i < j && ranks[j].contains_key(&i) {
                    edges.push((PersonId(i), PersonId(j)));
                }
            }
        }
        edges.sort_unstable();

        Ok(Instance {
            kind,
            names,
            prefs,
            genders,
            weights,
            ranks,
            edges,
        })
    }

    /// Convenience constructor with names `a1..an`, tiers given as raw indices.
    pub fn from_tiers(kind: Kind, lists: Vec<Vec<Vec<usize>>>, genders: Option<Vec<Gender>>) -> Result<Self> {
        let names = (1..=lists.len()).map(|i| format!("a{i}")).collect();
        let prefs = lists
            .into_iter()
            .map(|tiers| {
                PreferenceList::new(
                    tiers
                        .into_iter()
                        .map(|t| t.into_iter().map(PersonId).collect())
                        .collect(),
                )
            })
            .collect();
        Instance::new(kind, names, prefs, genders, None)
    }

    /// Same people and lists, different voter weights.
    pub fn with_weights(&self, weights: Vec<u32>) -> Result<Self> {
        if weights.len() != self.n() {
            return Err(Error::InvalidParameter(format!(
                "{} weights for {} people",
                weights.len(),
                self.n()
            )));
        }
        let mut out = self.clone();
        out.weights = weights;
        Ok(out)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn people(&self) -> impl Iterator<Item = PersonId> {
        (0..self.n()).map(PersonId)
    }

    pub fn name(&self, p: PersonId) -> &str {
        &self.names[p.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn person(&self, name: &str) -> Option<PersonId> {
        self.names.iter().position(|s| s == name).map(PersonId)
    }

    pub fn prefs(&self, p: PersonId) -> &PreferenceList {
        &self.prefs[p.0]
    }

    pub fn gender(&self, p: PersonId) -> Option<Gender> {
        self.genders.as_ref().map(|g| g[p.0])
    }

    pub fn genders(&self) -> Option<&[Gender]> {
        self.genders.as_deref()
    }

    pub fn weight(&self, p: PersonId) -> u32 {
        self.weights[p.0]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().map(|&w| u64::from(w)).sum()
    }

    pub fn has_unit_weights(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// Total length of all preference lists.
    pub fn list_length(&self) -> usize {
        self.prefs.iter().map(PreferenceList::len).sum()
    }

    pub fn has_ties(&self) -> bool {
        self.prefs.iter().any(PreferenceList::has_ties)
    }

    /// Rank of `b` in `a`'s list; `Unranked` if `b` is absent or `None`.
    pub fn rank_of(&self, a: PersonId, b: Option<PersonId>) -> Rank {
        b.and_then(|b| self.ranks[a.0].get(&b.0))
            .map_or(Rank::Unranked, |&r| Rank::Tier(r))
    }

    /// True iff `a` and `b` list each other.
    pub fn is_acceptable(&self, a: PersonId, b: PersonId) -> bool {
        self.ranks[a.0].contains_key(&b.0) && self.ranks[b.0].contains_key(&a.0)
    }

    /// Mutually acceptable pairs `(i, j)` with `i < j`, sorted.
    pub fn acceptable_pairs(&self) -> &[(PersonId, PersonId)] {
        &self.edges
    }

    /// Total weight of people who strictly prefer their partner in `x` to
    /// their partner in `y`.
    pub fn phi(&self, x: &Matching, y: &Matching) -> u64 {
        assert_eq!(x.n(), self.n(), "matching belongs to another instance");
        assert_eq!(y.n(), self.n(), "matching belongs to another instance");
        self.people()
            .filter(|&a| self.rank_of(a, x.partner(a)) < self.rank_of(a, y.partner(a)))
            .map(|a| u64::from(self.weight(a)))
            .sum()
    }

    /// `phi(y, x) / phi(x, y)`, or infinity when `phi(x, y) = 0`.
    pub fn delta(&self, x: &Matching, y: &Matching) -> Factor {
        let forward = self.phi(x, y);
        if forward == 0 {
            return Factor::Infinite;
        }
        let back = self.phi(y, x);
        Factor::Finite(Rational::new(back as i64, forward as i64))
    }

    /// Checks a raw pair list against this instance.
    pub fn validate_pairs(&self, pairs: &[(PersonId, PersonId)]) -> std::result::Result<(), Vec<Violation>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut violations = Vec::new();
        for &(a, b) in pairs {
            let mut known = true;
            for p in [a, b] {
                if p.0 >= n {
                    violations.push(Violation::UnknownPerson { person: p.0 });
                    known = false;
                }
            }
            if !known {
                continue;
            }
            if a == b {
                violations.push(Violation::SelfPair { person: a.0 });
                continue;
            }
            for p in [a, b] {
                if std::mem::replace(&mut seen[p.0], true) {
                    violations.push(Violation::NotDisjoint { person: p.0 });
                }
            }
            if !self.is_acceptable(a, b) {
                violations.push(Violation::NotAcceptable { a: a.0, b: b.0 });
            }
            if let (Some(ga), Some(gb)) = (self.gender(a), self.gender(b)) {
                if ga == gb {
                    violations.push(Violation::SameGender { a: a.0, b: b.0 });
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    /// Re-checks a matching, e.g. one built for a different instance.
    pub fn validate_matching(&self, m: &Matching) -> std::result::Result<(), Vec<Violation>> {
        self.validate_pairs(m.pairs())
    }
}

/// A set of disjoint, mutually acceptable pairs over an instance's people.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    pairs: Vec<(PersonId, PersonId)>,
    mate: Vec<Option<PersonId>>,
}

impl Matching {
    /// Validates `pairs` against `instance`.
    pub fn new(instance: &Instance, pairs: Vec<(PersonId, PersonId)>) -> Result<Self> {
        instance.validate_pairs(&pairs).map_err(Error::InvalidMatching)?;
        Ok(Self::from_valid_pairs(instance.n(), pairs))
    }

    pub fn empty(n: usize) -> Self {
        Matching {
            pairs: Vec::new(),
            mate: vec![None; n],
        }
    }

    /// Caller guarantees the pairs are disjoint and in range.
    pub(crate) fn from_valid_pairs(n: usize, pairs: impl IntoIterator<Item = (PersonId, PersonId)>) -> Self {
        let mut mate = vec![None; n];
        let mut pairs: Vec<_> = pairs
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        for &(a, b) in &pairs {
            debug_assert!(a != b && mate[a.0].is_none() && mate[b.0].is_none());
            mate[a.0] = Some(b);
            mate[b.0] = Some(a);
        }
        pairs.sort_unstable();
        Matching { pairs, mate }
    }

    /// Number of people in the underlying instance.
    pub fn n(&self) -> usize {
        self.mate.len()
    }

    pub fn pairs(&self) -> &[(PersonId, PersonId)] {
        &self.pairs
    }

    pub fn partner(&self, p: PersonId) -> Option<PersonId> {
        self.mate[p.0]
    }

    pub fn is_matched(&self, p: PersonId) -> bool {
        self.mate[p.0].is_some()
    }

    pub fn contains(&self, a: PersonId, b: PersonId) -> bool {
        self.mate[a.0] == Some(b)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn p(i: usize) -> PersonId {
        PersonId(i - 1)
    }

    fn m(inst: &Instance, pairs: &[(usize, usize)]) -> Matching {
        Matching::new(inst, pairs.iter().map(|&(a, b)| (p(a), p(b))).collect()).unwrap()
    }

    #[test]
    fn ranks_follow_tiers() {
        let inst = fixtures::tied_roommates().instance;
        assert_eq!(inst.rank_of(p(1), Some(p(4))), Rank::Tier(1));
        assert_eq!(inst.rank_of(p(1), Some(p(3))), Rank::Tier(3));
        assert_eq!(inst.rank_of(p(2), Some(p(1))), Rank::Tier(1));
        assert_eq!(inst.rank_of(p(2), Some(p(4))), Rank::Tier(1));
        assert_eq!(inst.rank_of(p(1), None), Rank::Unranked);
        assert!(Rank::Tier(1_000) < Rank::Unranked);
    }

    #[test]
    fn tied_comparison_counts() {
        let f = fixtures::tied_roommates();
        let inst = &f.instance;
        let [m0, m1, m2] = [&f.matchings[0], &f.matchings[1], &f.matchings[2]];
        assert_eq!(inst.phi(m0, m1), 1);
        assert_eq!(inst.phi(m1, m0), 0);
        assert_eq!(inst.phi(m0, m2), 3);
        assert_eq!(inst.phi(m2, m0), 1);
        assert_eq!(inst.phi(m1, m2), 3);
        assert_eq!(inst.phi(m2, m1), 1);
        assert_eq!(inst.phi(m2, m2), 0);
        assert_eq!(inst.delta(m0, m2), Factor::from_ratio(1, 3));
        assert_eq!(inst.delta(m2, m1), Factor::from_ratio(3, 1));
        assert_eq!(inst.delta(m1, m1), Factor::Infinite);
    }

    #[test]
    fn weighted_phi_sums_weights() {
        let f = fixtures::tied_roommates();
        let inst = f.instance.with_weights(vec![5, 1, 2, 0]).unwrap();
        // a2, a3, a4 prefer M0 to M2; a1 prefers M2.
        assert_eq!(inst.phi(&f.matchings[0], &f.matchings[2]), 1 + 2);
        assert_eq!(inst.phi(&f.matchings[2], &f.matchings[0]), 5);
    }

    #[test]
    fn validation_reports_each_violation() {
        let inst = fixtures::strict_roommates().instance;
        assert!(inst.validate_pairs(&[(p(1), p(2)), (p(3), p(4))]).is_ok());
        assert_eq!(
            inst.validate_pairs(&[(p(1), p(1))]),
            Err(vec![Violation::SelfPair { person: 0 }])
        );
        // a2 and a4 do not list each other.
        assert_eq!(
            inst.validate_pairs(&[(p(2), p(4))]),
            Err(vec![Violation::NotAcceptable { a: 1, b: 3 }])
        );
        let ex1 = fixtures::tied_roommates().instance;
        assert_eq!(
            ex1.validate_pairs(&[(p(1), p(2)), (p(1), p(3))]),
            Err(vec![Violation::NotDisjoint { person: 0 }])
        );
        assert!(matches!(
            Matching::new(&ex1, vec![(p(1), PersonId(9))]),
            Err(Error::InvalidMatching(_))
        ));
    }

    #[test]
    fn gender_violation_in_marriage_instance() {
        let inst = Instance::from_tiers(
            Kind::Marriage,
            vec![vec![vec![1]], vec![vec![0]], vec![]],
            Some(vec![Gender::Man, Gender::Woman, Gender::Man]),
        )
        .unwrap();
        assert!(inst.validate_pairs(&[(p(1), p(2))]).is_ok());
        let err = Instance::from_tiers(
            Kind::Marriage,
            vec![vec![vec![1]], vec![vec![0]]],
            Some(vec![Gender::Man, Gender::Man]),
        );
        assert!(err.is_err());
    }

    #[test]
    fn one_sided_listing_is_not_an_edge() {
        let inst = Instance::from_tiers(Kind::Roommates, vec![vec![vec![1]], vec![]], None).unwrap();
        assert!(inst.acceptable_pairs().is_empty());
        assert!(!inst.is_acceptable(p(1), p(2)));
    }

    #[test]
    fn bad_lists_are_rejected() {
        assert!(Instance::from_tiers(Kind::Roommates, vec![vec![vec![0]]], None).is_err());
        assert!(Instance::from_tiers(Kind::Roommates, vec![vec![vec![1], vec![1]], vec![]], None).is_err());
        assert!(Instance::from_tiers(Kind::Roommates, vec![vec![vec![]], vec![]], None).is_err());
        assert!(Instance::from_tiers(Kind::Roommates, vec![vec![vec![5]], vec![]], None).is_err());
    }

    #[test]
    fn matching_accessors() {
        let inst = fixtures::strict_roommates().instance;
        let mm = m(&inst, &[(2, 1)]);
        assert_eq!(mm.pairs(), &[(p(1), p(2))]);
        assert_eq!(mm.partner(p(2)), Some(p(1)));
        assert!(!mm.is_matched(p(3)));
        assert_eq!(mm.len(), 1);
    }
}
