use popfactor::aux_graph::{build_aux_graph, decompose_pm_weight};
use popfactor::fastpath::{has_positive_cycle, OrientedAuxGraph};
use popfactor::gen::{random_instance, random_matching, GenParams};
use popfactor::io::{parse_instance, serialize_instance};
use popfactor::mwpm::{enumerate_perfect_matchings, max_weight_perfect_matching, WeightedGraph};
use popfactor::oracle::{all_matchings, count_matchings, oracle_factor, oracle_margin};
use popfactor::{predicate_gt, unpopularity_factor, FastPath, Instance, Kind, Matching, PersonId, PreferenceList, Rational};
use proptest::prelude::*;

fn instance(kind: Kind, n: usize, density: f64, ties: f64, weighted: bool, seed: u64) -> Instance {
    let mut p = GenParams::new(kind, n, seed).density(density).tie_prob(ties);
    if weighted {
        p = p.weights(0..=6);
    }
    random_instance(&p).unwrap()
}

fn kind() -> impl Strategy<Value = Kind> {
    prop_oneof![Just(Kind::Roommates), Just(Kind::Marriage)]
}

fn graph() -> impl Strategy<Value = WeightedGraph> {
    (0usize..=10).prop_flat_map(|nv| {
        let pairs: Vec<(usize, usize)> = (0..nv).flat_map(|u| (u + 1..nv).map(move |v| (u, v))).collect();
        let len = pairs.len();
        (Just(pairs), proptest::collection::vec(proptest::option::weighted(0.6, -50i64..=50), len)).prop_map(
            move |(pairs, ws)| {
                let edges = pairs.iter().zip(ws).filter_map(|(&(u, v), w)| w.map(|w| (u, v, w))).collect();
                WeightedGraph::new(nv, edges).unwrap()
            },
        )
    })
}

/// Same instance with people listed in a different order.
fn relabel(inst: &Instance, m: &Matching, perm: &[usize]) -> (Instance, Matching) {
    let n = inst.n();
    let mut inv = vec![0; n];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    let names = perm.iter().map(|&old| inst.name(PersonId(old)).to_string()).collect();
    let prefs = perm
        .iter()
        .map(|&old| {
            PreferenceList::new(
                inst.prefs(PersonId(old))
                    .tiers()
                    .iter()
                    .map(|t| t.iter().map(|p| PersonId(inv[p.0])).collect())
                    .collect(),
            )
        })
        .collect();
    let genders = inst.genders().map(|g| perm.iter().map(|&old| g[old]).collect());
    let weights = perm.iter().map(|&old| inst.weight(PersonId(old))).collect();
    let relabeled = Instance::new(inst.kind(), names, prefs, genders, Some(weights)).unwrap();
    let pairs = m.pairs().iter().map(|&(a, b)| (PersonId(inv[a.0]), PersonId(inv[b.0]))).collect();
    let m = Matching::new(&relabeled, pairs).unwrap();
    (relabeled, m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn solver_matches_enumeration(g in graph()) {
        let best = max_weight_perfect_matching(&g).unwrap();
        let brute = enumerate_perfect_matchings(&g, 12).unwrap().map(|p| p.total_weight).max();
        prop_assert_eq!(best.is_found(), brute.is_some());
        if let Some(b) = brute {
            prop_assert_eq!(best.total_weight, b);
            prop_assert_eq!(g.perfect_matching_weight(&best.pairs).unwrap(), b);
            // The lightest perfect matching is the heaviest of the negated graph.
            let lightest = enumerate_perfect_matchings(&g, 12).unwrap().map(|p| p.total_weight).min().unwrap();
            let neg = max_weight_perfect_matching(&g.map_weights(|w| -w)).unwrap();
            prop_assert_eq!(neg.total_weight, -lightest);
        }
    }

    #[test]
    fn factor_and_margin_match_oracle(
        kind in kind(), n in 0usize..=7, density in 0.2f64..=1.0, ties in 0.0f64..=0.6,
        weighted in any::<bool>(), seed in any::<u64>(),
    ) {
        let inst = instance(kind, n, density, ties, weighted, seed);
        let m = random_matching(&inst, seed.rotate_left(7));
        let rep = unpopularity_factor(&inst, &m, FastPath::Verify).unwrap();
        let of = oracle_factor(&inst, &m, 10).unwrap();
        prop_assert_eq!(rep.factor, of.factor);
        prop_assert_eq!(rep.zero_by_convention, of.zero_by_convention);
        prop_assert_eq!(rep.margin as i64, oracle_margin(&inst, &m, 10).unwrap());
        prop_assert!(rep.queries <= rep.candidates.query_bound());
        if let Some(w) = &rep.witness {
            prop_assert_eq!(inst.delta(&m, w), rep.factor);
        }
    }

    #[test]
    fn heavy_weights_use_tree_search_and_match_oracle(
        kind in kind(), n in 3usize..=6, ties in 0.0f64..=0.5, seed in any::<u64>(),
    ) {
        let p = GenParams::new(kind, n, seed).density(0.8).tie_prob(ties).weights(1000..=3000);
        let inst = random_instance(&p).unwrap();
        let m = random_matching(&inst, seed ^ 6);
        let rep = unpopularity_factor(&inst, &m, FastPath::Auto).unwrap();
        prop_assert!(!rep.candidates.is_materialized());
        prop_assert_eq!(rep.factor, oracle_factor(&inst, &m, 10).unwrap().factor);
        prop_assert_eq!(rep.margin as i64, oracle_margin(&inst, &m, 10).unwrap());
    }

    #[test]
    fn predicate_matches_brute_force_at_every_candidate(
        kind in kind(), n in 1usize..=6, ties in 0.0f64..=0.5, seed in any::<u64>(),
    ) {
        let inst = instance(kind, n, 0.7, ties, false, seed);
        let m = random_matching(&inst, seed ^ 1);
        let rivals = all_matchings(&inst, 10).unwrap();
        let report = unpopularity_factor(&inst, &m, FastPath::Off).unwrap();
        for k in report.candidates.materialize() {
            let expected = rivals.iter().any(|r| {
                Rational::from_integer(inst.phi(r, &m) as i64) > k * Rational::from_integer(inst.phi(&m, r) as i64)
            });
            for mode in [FastPath::Off, FastPath::Verify] {
                let p = predicate_gt(&inst, &m, k, mode).unwrap();
                prop_assert_eq!(p.holds, expected, "k = {}", k);
                prop_assert_eq!(p.witness.is_some(), expected);
            }
        }
    }

    #[test]
    fn cycle_search_matches_positive_perfect_matching(
        n in 1usize..=6, ties in 0.0f64..=0.5, num in 0i64..=12, den in 1i64..=6, seed in any::<u64>(),
    ) {
        let inst = instance(Kind::Marriage, n, 0.7, ties, false, seed);
        let m = random_matching(&inst, seed ^ 2);
        let g = build_aux_graph(&inst, &m, Rational::new(num, den)).unwrap();
        let (ig, _) = g.scale_to_integer().unwrap();
        let positive = max_weight_perfect_matching(&ig).unwrap().total_weight > 0;
        let out = has_positive_cycle(&inst, &g).unwrap();
        prop_assert_eq!(out.positive, positive);
        let reversed = OrientedAuxGraph::new(&inst, &g).unwrap().reversed();
        prop_assert_eq!(reversed.positive_cycle().is_some(), positive);
        if let Some(w) = out.witness {
            prop_assert!(w.vertices.len() % 2 == 0);
            for (i, &v) in w.vertices.iter().enumerate() {
                let next = w.vertices[(i + 1) % w.vertices.len()];
                prop_assert_eq!(g.is_reference_edge(v, next), i % 2 == 0);
            }
            let pm = w.apply(&g);
            prop_assert_eq!(g.pairs_weight(&pm).unwrap(), w.weight);
        }
    }

    #[test]
    fn decomposition_identity_on_every_perfect_matching(
        kind in kind(), n in 1usize..=5, ties in 0.0f64..=0.5, weighted in any::<bool>(),
        num in 0i64..=8, den in 1i64..=4, seed in any::<u64>(),
    ) {
        let inst = instance(kind, n, 0.8, ties, weighted, seed);
        let m = random_matching(&inst, seed ^ 3);
        let g = build_aux_graph(&inst, &m, Rational::new(num, den)).unwrap();
        let (ig, _) = g.scale_to_integer().unwrap();
        for pm in enumerate_perfect_matchings(&ig, 12).unwrap() {
            let d = decompose_pm_weight(&inst, &m, &g, &pm.pairs).unwrap();
            prop_assert!(d.identity_holds());
            prop_assert!(d.same_singles);
            prop_assert_eq!(d.first_sets.gain(&inst), inst.phi(&d.first, &m) as i64);
            prop_assert_eq!(d.first_sets.loss(&inst), inst.phi(&m, &d.first) as i64);
        }
    }

    #[test]
    fn edge_weights_fall_as_k_grows(
        kind in kind(), n in 1usize..=7, seed in any::<u64>(), k1 in 0i64..=20, k2 in 0i64..=20,
    ) {
        let inst = instance(kind, n, 0.7, 0.3, true, seed);
        let m = random_matching(&inst, seed ^ 4);
        let (lo, hi) = (Rational::new(k1.min(k2), 3), Rational::new(k1.max(k2), 3));
        let a = build_aux_graph(&inst, &m, lo).unwrap();
        let b = build_aux_graph(&inst, &m, hi).unwrap();
        for (x, y) in a.edges().iter().zip(b.edges()) {
            prop_assert_eq!((x.u, x.v), (y.u, y.v));
            prop_assert!(y.weight <= x.weight);
        }
        prop_assert_eq!(a.pairs_weight(a.reference_matching()).unwrap(), Rational::from_integer(0));
    }

    #[test]
    fn relabeling_changes_nothing(
        kind in kind(), n in 1usize..=6, seed in any::<u64>(), perm_seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let inst = instance(kind, n, 0.7, 0.3, true, seed);
        let m = random_matching(&inst, seed ^ 5);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed));
        let (inst2, m2) = relabel(&inst, &m, &perm);
        prop_assert_eq!(oracle_factor(&inst, &m, 10).unwrap(), oracle_factor(&inst2, &m2, 10).unwrap());
        prop_assert_eq!(oracle_margin(&inst, &m, 10).unwrap(), oracle_margin(&inst2, &m2, 10).unwrap());
        let a = unpopularity_factor(&inst, &m, FastPath::Auto).unwrap();
        let b = unpopularity_factor(&inst2, &m2, FastPath::Auto).unwrap();
        prop_assert_eq!((a.factor, a.margin, a.popular), (b.factor, b.margin, b.popular));
    }

    #[test]
    fn matchings_are_enumerated_once(kind in kind(), n in 0usize..=8, density in 0.0f64..=1.0, seed in any::<u64>()) {
        let inst = instance(kind, n, density, 0.0, false, seed);
        let all = all_matchings(&inst, 10).unwrap();
        prop_assert_eq!(all.len() as u64, count_matchings(&inst));
        let distinct: std::collections::HashSet<_> = all.iter().map(|m| m.pairs().to_vec()).collect();
        prop_assert_eq!(distinct.len(), all.len());
    }

    #[test]
    fn instance_text_round_trips(
        kind in kind(), n in 0usize..=9, ties in 0.0f64..=0.7, weighted in any::<bool>(), seed in any::<u64>(),
    ) {
        let inst = instance(kind, n, 0.6, ties, weighted, seed);
        let text = serialize_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(serialize_instance(&back), text);
        prop_assert_eq!(back.acceptable_pairs(), inst.acceptable_pairs());
    }
}
