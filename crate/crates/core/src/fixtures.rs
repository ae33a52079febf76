//! The small instances shipped with the crate, used by `selftest` and
//! by the golden tests.

use crate::instance::{Instance, Matching};
use crate::io::{parse_instance, parse_matching};

pub const TIED: &str = include_str!("../data/tied_roommates.txt");
pub const TIED_M0: &str = include_str!("../data/tied_roommates_m0.txt");
pub const TIED_M1: &str = include_str!("../data/tied_roommates_m1.txt");
pub const TIED_M2: &str = include_str!("../data/tied_roommates_m2.txt");
pub const STRICT: &str = include_str!("../data/strict_roommates.txt");
pub const STRICT_M: &str = include_str!("../data/strict_roommates_m.txt");
pub const COUPLES: &str = include_str!("../data/two_couples.txt");
pub const COUPLES_M: &str = include_str!("../data/two_couples_m.txt");

/// Expected edge list of the auxiliary graph for the second instance at k = 2.
pub const STRICT_AUX_K2: &str = include_str!("../data/strict_roommates_aux_k2.txt");
/// Same at k = 3.
pub const STRICT_AUX_K3: &str = include_str!("../data/strict_roommates_aux_k3.txt");

pub struct Fixture {
    pub instance: Instance,
    pub matchings: Vec<Matching>,
}

fn load(inst: &str, matchings: &[&str]) -> Fixture {
    let instance = parse_instance(inst).expect("bundled instance parses");
    let matchings = matchings
        .iter()
        .map(|m| parse_matching(m, &instance).expect("bundled matching parses"))
        .collect();
    Fixture { instance, matchings }
}

/// Four-person roommates instance with ties; matchings M0, M1, M2.
pub fn tied_roommates() -> Fixture {
    load(TIED, &[TIED_M0, TIED_M1, TIED_M2])
}

/// Four-person strict roommates instance with M = {a1 a2, a3 a4}.
pub fn strict_roommates() -> Fixture {
    load(STRICT, &[STRICT_M])
}

/// Two men, two women, M' = {m1 w1, m2 w2}.
pub fn two_couples() -> Fixture {
    load(COUPLES, &[COUPLES_M])
}
