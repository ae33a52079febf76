//! Brute-force ground truth over every matching of a small instance.

use crate::error::{Error, Result};
use crate::instance::{Instance, Matching, PersonId};
use crate::ratio::Factor;

pub const DEFAULT_ORACLE_CAP: usize = 10;

/// Every matching, including the empty one and non-maximal ones.
pub fn all_matchings(inst: &Instance, cap: usize) -> Result<Vec<Matching>> {
    let n = inst.n();
    if n > cap {
        return Err(Error::CapExceeded { size: n, cap });
    }
    let mut out = Vec::new();
    let mut taken = vec![false; n];
    let mut pairs = Vec::new();
    extend(inst, 0, &mut taken, &mut pairs, &mut out);
    Ok(out)
}

// The lowest undecided person either stays single or pairs with a later
// acceptable undecided person.
fn extend(
    inst: &Instance,
    from: usize,
    taken: &mut [bool],
    pairs: &mut Vec<(PersonId, PersonId)>,
    out: &mut Vec<Matching>,
) {
    let Some(a) = (from..inst.n()).find(|&i| !taken[i]) else {
        out.push(Matching::from_valid_pairs(inst.n(), pairs.iter().copied()));
        return;
    };
    taken[a] = true;
    extend(inst, a + 1, taken, pairs, out);
    for b in a + 1..inst.n() {
        if !taken[b] && inst.is_acceptable(PersonId(a), PersonId(b)) {
            taken[b] = true;
            pairs.push((PersonId(a), PersonId(b)));
            extend(inst, a + 1, taken, pairs, out);
            pairs.pop();
            taken[b] = false;
        }
    }
    taken[a] = false;
}

/// Number of matchings by include/exclude recursion over the edges; an
/// independent count for [`all_matchings`].
pub fn count_matchings(inst: &Instance) -> u64 {
    fn go(edges: &[(usize, usize)], used: u64) -> u64 {
        match edges.split_first() {
            None => 1,
            Some((&(a, b), rest)) => {
                let skip = go(rest, used);
                if used & (1 << a) == 0 && used & (1 << b) == 0 {
                    skip + go(rest, used | 1 << a | 1 << b)
                } else {
                    skip
                }
            }
        }
    }
    let edges: Vec<(usize, usize)> = inst.acceptable_pairs().iter().map(|&(a, b)| (a.0, b.0)).collect();
    go(&edges, 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleFactor {
    pub factor: Factor,
    /// No matching differs from `M` for any voter.
    pub zero_by_convention: bool,
}

/// `max Δ(M, M')` over matchings that do not tie with `M` on every voter.
pub fn oracle_factor(inst: &Instance, m: &Matching, cap: usize) -> Result<OracleFactor> {
    let mut best: Option<Factor> = None;
    for rival in all_matchings(inst, cap)? {
        if inst.phi(m, &rival) == 0 && inst.phi(&rival, m) == 0 {
            continue;
        }
        let d = inst.delta(m, &rival);
        best = Some(best.map_or(d, |b| b.max(d)));
    }
    Ok(match best {
        Some(factor) => OracleFactor {
            factor,
            zero_by_convention: false,
        },
        None => OracleFactor {
            factor: Factor::zero(),
            zero_by_convention: true,
        },
    })
}

/// `max phi(M', M) - phi(M, M')` over all matchings.
pub fn oracle_margin(inst: &Instance, m: &Matching, cap: usize) -> Result<i64> {
    Ok(all_matchings(inst, cap)?
        .iter()
        .map(|rival| inst.phi(rival, m) as i64 - inst.phi(m, rival) as i64)
        .max()
        .unwrap_or(0))
}
