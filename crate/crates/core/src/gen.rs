//! Seeded random instances and matchings.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Gender, Instance, Kind, Matching, PersonId, PreferenceList};

#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    pub kind: Kind,
    pub n: usize,
    /// Probability that an eligible pair is mutually acceptable.
    pub density: f64,
    /// Probability that a list entry is tied with the one before it.
    pub tie_prob: f64,
    /// Voter weights are drawn uniformly from this range; all ones if unset.
    pub weights: Option<RangeInclusive<u32>>,
    pub seed: u64,
}

impl GenParams {
    pub fn new(kind: Kind, n: usize, seed: u64) -> Self {
        GenParams {
            kind,
            n,
            density: 0.7,
            tie_prob: 0.0,
            weights: None,
            seed,
        }
    }

    pub fn density(mut self, p: f64) -> Self {
        self.density = p;
        self
    }

    pub fn tie_prob(mut self, p: f64) -> Self {
        self.tie_prob = p;
        self
    }

    pub fn weights(mut self, range: RangeInclusive<u32>) -> Self {
        self.weights = Some(range);
        self
    }
}

/// Random instance; acceptability is symmetric by construction. Marriage
/// instances put the first `(n + 1) / 2` people, named `m1..`, on the men's
/// side and the rest, `w1..`, on the women's.
pub fn random_instance(p: &GenParams) -> Result<Instance> {
    for (name, v) in [("density", p.density), ("tie probability", p.tie_prob)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidParameter(format!("{name} {v} is outside [0, 1]")));
        }
    }
    if p.weights.as_ref().is_some_and(|r| r.is_empty()) {
        return Err(Error::InvalidParameter("empty weight range".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let n = p.n;
    let men = n.div_ceil(2);
    let (names, genders): (Vec<String>, Option<Vec<Gender>>) = match p.kind {
        Kind::Roommates => ((1..=n).map(|i| format!("a{i}")).collect(), None),
        Kind::Marriage => (
            (1..=men).map(|i| format!("m{i}")).chain((1..=n - men).map(|i| format!("w{i}"))).collect(),
            Some((0..n).map(|i| if i < men { Gender::Man } else { Gender::Woman }).collect()),
        ),
    };

    let mut adj: Vec<Vec<PersonId>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in a + 1..n {
            let eligible = p.kind == Kind::Roommates || (a < men) != (b < men);
            if eligible && rng.gen_bool(p.density) {
                adj[a].push(PersonId(b));
                adj[b].push(PersonId(a));
            }
        }
    }
    let prefs = adj
        .into_iter()
        .map(|mut list| {
            list.shuffle(&mut rng);
            let mut tiers: Vec<Vec<PersonId>> = Vec::new();
            for b in list {
                match tiers.last_mut() {
                    Some(t) if rng.gen_bool(p.tie_prob) => t.push(b),
                    _ => tiers.push(vec![b]),
                }
            }
            PreferenceList::new(tiers)
        })
        .collect();
    let weights = p.weights.clone().map(|r| (0..n).map(|_| rng.gen_range(r.clone())).collect());
    Instance::new(p.kind, names, prefs, genders, weights)
}

/// Random, possibly non-maximal matching: acceptable pairs are visited in
/// random order and each is kept with probability 3/4 when both are free.
pub fn random_matching(inst: &Instance, seed: u64) -> Matching {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = inst.acceptable_pairs().to_vec();
    edges.shuffle(&mut rng);
    let mut taken = vec![false; inst.n()];
    let mut pairs = Vec::new();
    for (a, b) in edges {
        if !taken[a.0] && !taken[b.0] && rng.gen_bool(0.75) {
            taken[a.0] = true;
            taken[b.0] = true;
            pairs.push((a, b));
        }
    }
    Matching::from_valid_pairs(inst.n(), pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::serialize_instance;

    #[test]
    fn deterministic_for_a_seed() {
        let p = GenParams::new(Kind::Roommates, 7, 42).tie_prob(0.3).weights(1..=5);
        let a = random_instance(&p).unwrap();
        let b = random_instance(&p).unwrap();
        assert_eq!(serialize_instance(&a), serialize_instance(&b));
        assert_eq!(random_matching(&a, 9), random_matching(&b, 9));
        let c = random_instance(&GenParams { seed: 43, ..p }).unwrap();
        assert_ne!(serialize_instance(&a), serialize_instance(&c));
    }

    #[test]
    fn strict_and_complete_bipartite() {
        let inst = random_instance(&GenParams::new(Kind::Marriage, 8, 1).density(1.0)).unwrap();
        assert!(!inst.has_ties());
        assert_eq!(inst.acceptable_pairs().len(), 8 * 8 / 4);
        let odd = random_instance(&GenParams::new(Kind::Marriage, 5, 1).density(1.0)).unwrap();
        assert_eq!(odd.acceptable_pairs().len(), 3 * 2);
    }

    #[test]
    fn matchings_are_valid() {
        for seed in 0..20 {
            let inst = random_instance(&GenParams::new(Kind::Roommates, 6, seed).tie_prob(0.5)).unwrap();
            let m = random_matching(&inst, seed);
            assert!(inst.validate_matching(&m).is_ok());
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(random_instance(&GenParams::new(Kind::Roommates, 3, 0).density(1.5)).is_err());
        #[allow(clippy::reversed_empty_ranges)]
        let empty = 5..=1;
        assert!(random_instance(&GenParams::new(Kind::Roommates, 3, 0).weights(empty)).is_err());
    }
}
