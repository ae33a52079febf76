//! Deferred acceptance for strict marriage instances.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::instance::{Instance, Kind, Matching, PersonId};

/// Stable matching with the gender of the first listed person proposing.
/// Proposals only go to mutually acceptable partners.
pub fn gale_shapley(inst: &Instance) -> Result<Matching> {
    if inst.kind() != Kind::Marriage {
        return Err(Error::Unsupported("stable matching needs a marriage instance".into()));
    }
    if inst.has_ties() {
        return Err(Error::Unsupported("stable matching needs strict preference lists".into()));
    }
    let n = inst.n();
    if n == 0 {
        return Ok(Matching::empty(0));
    }
    let proposing = inst.gender(PersonId(0));
    let lists: Vec<Vec<PersonId>> = inst
        .people()
        .map(|a| inst.prefs(a).iter().filter(|&b| inst.is_acceptable(a, b)).collect())
        .collect();
    let mut next = vec![0usize; n];
    let mut mate: Vec<Option<PersonId>> = vec![None; n];
    let mut free: VecDeque<PersonId> = inst.people().filter(|&a| inst.gender(a) == proposing).collect();
    while let Some(p) = free.pop_front() {
        let Some(&r) = lists[p.0].get(next[p.0]) else {
            continue;
        };
        next[p.0] += 1;
        match mate[r.0] {
            None => {
                mate[r.0] = Some(p);
                mate[p.0] = Some(r);
            }
            Some(cur) if inst.rank_of(r, Some(p)) < inst.rank_of(r, Some(cur)) => {
                mate[cur.0] = None;
                free.push_back(cur);
                mate[r.0] = Some(p);
                mate[p.0] = Some(r);
            }
            Some(_) => free.push_back(p),
        }
    }
    let pairs = inst.people().filter_map(|a| mate[a.0].filter(|&b| a < b).map(|b| (a, b)));
    Ok(Matching::from_valid_pairs(n, pairs))
}

/// Acceptable pairs outside `m` whose members both strictly prefer each
/// other to their partners in `m`.
pub fn blocking_pairs(inst: &Instance, m: &Matching) -> Vec<(PersonId, PersonId)> {
    let prefers = |a: PersonId, b: PersonId| inst.rank_of(a, Some(b)) < inst.rank_of(a, m.partner(a));
    inst.acceptable_pairs()
        .iter()
        .copied()
        .filter(|&(a, b)| !m.contains(a, b) && prefers(a, b) && prefers(b, a))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::instance::Gender;

    #[test]
    fn two_couples_values() {
        let f = fixtures::two_couples();
        let m = gale_shapley(&f.instance).unwrap();
        let name = |a: PersonId| f.instance.name(a).to_string();
        let pairs: Vec<(String, String)> = m.pairs().iter().map(|&(a, b)| (name(a), name(b))).collect();
        assert_eq!(pairs, [("m1".into(), "w2".into()), ("m2".into(), "w1".into())]);
        assert!(blocking_pairs(&f.instance, &m).is_empty());
        assert_eq!(blocking_pairs(&f.instance, &f.matchings[0]).len(), 1);
    }

    #[test]
    fn single_pair_and_rejections() {
        let g = Some(vec![Gender::Man, Gender::Woman]);
        let inst = Instance::from_tiers(Kind::Marriage, vec![vec![vec![1]], vec![vec![0]]], g.clone()).unwrap();
        assert_eq!(gale_shapley(&inst).unwrap().len(), 1);
        let tied = Instance::from_tiers(
            Kind::Marriage,
            vec![vec![vec![2, 3]], vec![vec![2], vec![3]], vec![vec![0], vec![1]], vec![vec![0], vec![1]]],
            Some(vec![Gender::Man, Gender::Man, Gender::Woman, Gender::Woman]),
        )
        .unwrap();
        assert!(gale_shapley(&tied).is_err());
        assert!(gale_shapley(&fixtures::tied_roommates().instance).is_err());
    }
}
