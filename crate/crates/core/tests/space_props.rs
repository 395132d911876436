mod common;

use fintop::io::{parse_space, space_to_string, to_dot};
use fintop::space::{
    find_isomorphism, nh_join, nh_suspension, opposite, product, validate, FiniteSpace, RawSpace,
    SpaceKind,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn space_strategy(max: usize) -> impl Strategy<Value = FiniteSpace> {
    (1..=max, 0.0..0.8f64, any::<u64>()).prop_map(|(n, density, seed)| {
        common::random_space(&mut ChaCha8Rng::seed_from_u64(seed), n, density)
    })
}

/// The same order with its points listed in a shuffled order.
fn relabel(space: &FiniteSpace, seed: u64) -> FiniteSpace {
    use rand::seq::SliceRandom;
    let n = space.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let labels = perm.iter().map(|&p| format!("q{p}")).collect();
    let mut relation = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if space.leq(perm[i], perm[j]) {
                relation.push((i, j));
            }
        }
    }
    FiniteSpace::from_relation(labels, &relation, SpaceKind::Explicit).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn order_axioms_and_opens(space in space_strategy(8)) {
        let n = space.len();
        for a in 0..n {
            prop_assert!(space.leq(a, a));
            for b in 0..n {
                if a != b && space.leq(a, b) {
                    prop_assert!(!space.leq(b, a));
                }
                for c in 0..n {
                    if space.leq(a, b) && space.leq(b, c) {
                        prop_assert!(space.leq(a, c));
                    }
                }
            }
            prop_assert!(space.is_open(space.down(a)));
            prop_assert!(space.is_closed(space.up(a)));
        }
        prop_assert!(validate(&space.to_raw()).is_valid());
    }

    #[test]
    fn constructions_have_the_right_shape(a in space_strategy(4), b in space_strategy(4)) {
        let p = product(&a, &b);
        prop_assert_eq!(p.len(), a.len() * b.len());
        prop_assert_eq!(p.maximal_points().len(), a.maximal_points().len() * b.maximal_points().len());
        let nb = b.len();
        for i in 0..a.len() {
            for j in 0..a.len() {
                for k in 0..nb {
                    for l in 0..nb {
                        prop_assert_eq!(p.leq(i * nb + k, j * nb + l), a.leq(i, j) && b.leq(k, l));
                    }
                }
            }
        }
        let op = opposite(&a);
        prop_assert_eq!(&opposite(&op), &a);
        prop_assert_eq!(op.maximal_points().len(), a.minimal_points().len());
        let z = nh_join(&a, &b);
        prop_assert_eq!(z.len(), a.len() + b.len());
        prop_assert!(z.is_connected_space());
        for x in 0..a.len() {
            for y in 0..b.len() {
                prop_assert!(z.leq(x, a.len() + y));
            }
        }
        let s = nh_suspension(&a);
        prop_assert_eq!(s.len(), a.len() + 2);
        prop_assert_eq!(s.maximal_points().len(), 2);
    }

    #[test]
    fn json_round_trip_is_byte_stable(space in space_strategy(8)) {
        let text = space_to_string(&space);
        let back = parse_space(&text).unwrap();
        prop_assert_eq!(&back, &space);
        prop_assert_eq!(space_to_string(&back), text);
        prop_assert!(to_dot(&space).starts_with("digraph"));
    }

    #[test]
    fn isomorphism_survives_relabeling(space in space_strategy(7), seed in any::<u64>()) {
        let other = relabel(&space, seed);
        let iso = find_isomorphism(&space, &other).expect("relabeling is an isomorphism");
        for a in 0..space.len() {
            for b in 0..space.len() {
                prop_assert_eq!(space.leq(a, b), other.leq(iso[a], iso[b]));
            }
        }
    }

    /// Random claimed relations: validation accepts exactly the partial
    /// orders whose Hasse edges generate them.
    #[test]
    fn validation_matches_the_axioms(n in 1usize..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
        for a in 0..n {
            for b in 0..n {
                if a != b && rng.gen_bool(0.3) {
                    pairs.push((a, b));
                }
            }
        }
        let raw = RawSpace::from_pairs(labels, &pairs);
        let leq = |a: usize, b: usize| raw.leq[a][b];
        let antisymmetric = (0..n).all(|a| (0..n).all(|b| a == b || !(leq(a, b) && leq(b, a))));
        let transitive = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(leq(a, b) && leq(b, c)) || leq(a, c))));
        let report = validate(&raw);
        prop_assert_eq!(report.is_valid(), antisymmetric && transitive, "{:?}", report);
    }
}
