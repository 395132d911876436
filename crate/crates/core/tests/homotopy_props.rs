mod common;

use std::sync::Arc;

use fintop::homotopy::{
    beat_points, core, homotopic, is_contractible, is_nullhomotopic_inclusion,
    row_column_obstruction, Budget, ContinuousMap, Decision, Fence, HomotopyTarget, SquareSpace,
};
use fintop::space::{circle_model, find_isomorphism, FiniteSpace, PointSet};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn space_strategy(max: usize) -> impl Strategy<Value = FiniteSpace> {
    (1..=max, 0.0..0.8f64, any::<u64>()).prop_map(|(n, density, seed)| {
        common::random_space(&mut ChaCha8Rng::seed_from_u64(seed), n, density)
    })
}

fn connected_strategy(max: usize) -> impl Strategy<Value = FiniteSpace> {
    (1..=max, 0.3..0.8f64, any::<u64>()).prop_map(|(n, density, seed)| {
        common::random_connected_space(&mut ChaCha8Rng::seed_from_u64(seed), n, density)
    })
}

/// A random open subset, nonempty.
fn random_open(space: &FiniteSpace, rng: &mut ChaCha8Rng) -> PointSet {
    loop {
        let mut set = space.empty_set();
        for p in 0..space.len() {
            if rng.gen_bool(0.5) {
                set.insert(p);
            }
        }
        let open = space.down_closure(&set);
        if !open.is_empty() {
            return open;
        }
    }
}

fn check_fence_ends(fence: &Fence, f: &[usize], g: &[usize]) {
    fence.verify().unwrap();
    assert_eq!(fence.maps().first().unwrap(), f);
    assert_eq!(fence.maps().last().unwrap(), g);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The engine agrees with breadth-first search over every map, and its
    /// fences pass the checker with the right ends.
    #[test]
    fn engine_matches_brute_force(
        domain in space_strategy(4),
        codomain in space_strategy(5),
        seed in any::<u64>(),
    ) {
        let maps = common::all_maps(&domain, &codomain);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let domain = Arc::new(domain);
        let codomain = Arc::new(codomain);
        let target = HomotopyTarget::new(codomain.clone());
        for _ in 0..4 {
            let f = maps.choose(&mut rng).unwrap();
            let g = maps.choose(&mut rng).unwrap();
            let expected = common::brute_homotopic(&domain, &codomain, f, g);
            match target.homotopic(&domain, f, g, &Budget::unlimited()) {
                Decision::Found(fence) => {
                    prop_assert!(expected);
                    check_fence_ends(&fence, f, g);
                }
                Decision::Refuted { .. } => prop_assert!(!expected),
                Decision::Inconclusive { .. } => prop_assert!(false, "unlimited budget ran out"),
            }
            let null = maps.iter().any(|c| {
                c.windows(2).all(|w| w[0] == w[1]) && common::brute_homotopic(&domain, &codomain, f, c)
            });
            match target.nullhomotopic(&domain, f, &Budget::unlimited()) {
                Decision::Found(fence) => {
                    prop_assert!(null);
                    fence.verify().unwrap();
                    prop_assert_eq!(fence.maps()[0].as_slice(), f.as_slice());
                    prop_assert!(fence.last().is_constant());
                }
                Decision::Refuted { .. } => prop_assert!(!null),
                Decision::Inconclusive { .. } => prop_assert!(false, "unlimited budget ran out"),
            }
        }
    }

    /// Homotopy is an equivalence relation, witnessed by reversing and
    /// concatenating fences.
    #[test]
    fn fences_compose(
        domain in space_strategy(4),
        codomain in connected_strategy(5),
        seed in any::<u64>(),
    ) {
        let maps = common::all_maps(&domain, &codomain);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let domain = Arc::new(domain);
        let codomain = Arc::new(codomain);
        let as_map = |a: &Vec<usize>| ContinuousMap::new(domain.clone(), codomain.clone(), a.clone()).unwrap();
        let f = as_map(maps.choose(&mut rng).unwrap());
        let g = as_map(maps.choose(&mut rng).unwrap());
        let h = as_map(maps.choose(&mut rng).unwrap());
        let budget = Budget::unlimited();
        let fg = homotopic(&f, &g, &budget).unwrap();
        let gh = homotopic(&g, &h, &budget).unwrap();
        let fh = homotopic(&f, &h, &budget).unwrap();
        if let (Some(a), Some(b)) = (fg.found(), gh.found()) {
            let joined = a.concat(b).unwrap();
            check_fence_ends(&joined, f.assignment(), h.assignment());
            prop_assert!(fh.is_found());
        }
        if let Some(a) = fg.found() {
            let back = a.reversed();
            check_fence_ends(&back, g.assignment(), f.assignment());
            prop_assert!(homotopic(&g, &f, &budget).unwrap().is_found());
        }
        prop_assert!(homotopic(&f, &f, &budget).unwrap().is_found());
    }

    /// Restricting a planner to an open subset gives a planner there.
    #[test]
    fn planners_restrict(space in connected_strategy(4), seed in any::<u64>()) {
        let square = SquareSpace::new(Arc::new(space));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let big = random_open(square.square(), &mut rng);
        let small = {
            let mut s = random_open(square.square(), &mut rng);
            s.intersect_with(&big);
            s
        };
        let budget = Budget::unlimited();
        let on_big = square.admits_planner(&big, &budget).unwrap();
        if let Some(cert) = on_big.found() {
            cert.verify(&square).unwrap();
            if !small.is_empty() {
                prop_assert!(square.admits_planner(&small, &budget).unwrap().is_found());
            }
        }
    }

    /// A block containing a full row or column of a non-contractible space
    /// never admits a planner.
    #[test]
    fn obstruction_is_sound(space in connected_strategy(6), seed in any::<u64>()) {
        let square = SquareSpace::new(Arc::new(space));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = square.base().clone();
        let contractible = is_contractible(&base);
        for _ in 0..4 {
            let mut set = random_open(square.square(), &mut rng);
            // Force a row in half of the trials.
            if rng.gen_bool(0.5) {
                let a = rng.gen_range(0..base.len());
                for b in 0..base.len() {
                    set.union_with(square.square().down(square.pair(a, b)));
                }
            }
            if row_column_obstruction(&set, &base, contractible) {
                prop_assert!(!contractible);
                let decision = square.admits_planner(&set, &Budget::unlimited()).unwrap();
                prop_assert!(decision.is_refuted());
            }
        }
    }

    /// The core has no beat points, is idempotent, and is a point exactly for
    /// contractible spaces.
    #[test]
    fn core_properties(space in space_strategy(7)) {
        let c = core(&space);
        prop_assert!(beat_points(&c).is_empty());
        prop_assert!(find_isomorphism(&core(&c), &c).is_some());
        prop_assert_eq!(is_contractible(&space), c.len() == 1);
        prop_assert!(c.len() <= space.len());
        // The full space of a connected space is nullhomotopic in itself iff
        // it is contractible.
        if space.is_connected_space() {
            let arc = Arc::new(space.clone());
            let d = is_nullhomotopic_inclusion(&arc.full_set(), &arc, &Budget::unlimited()).unwrap();
            prop_assert_eq!(d.is_found(), c.len() == 1);
        }
    }
}

#[test]
fn disconnected_domains_move_componentwise() {
    let s = Arc::new(circle_model(3).unwrap());
    let target = HomotopyTarget::new(s.clone());
    let domain = Arc::new(fintop::space::discrete(4).unwrap());
    let f = vec![0, 3, 5, 2];
    let g = vec![4, 4, 1, 0];
    let fence = target
        .homotopic(&domain, &f, &g, &Budget::unlimited())
        .found()
        .cloned()
        .unwrap();
    check_fence_ends(&fence, &f, &g);
    let null = target
        .nullhomotopic(&domain, &f, &Budget::unlimited())
        .found()
        .cloned()
        .unwrap();
    null.verify().unwrap();
    assert!(null.last().is_constant());
}

#[test]
fn nullhomotopy_needs_one_codomain_component() {
    let two = Arc::new(fintop::space::discrete(2).unwrap());
    let target = HomotopyTarget::new(two.clone());
    let domain = Arc::new(fintop::space::discrete(2).unwrap());
    assert!(target
        .nullhomotopic(&domain, &[0, 1], &Budget::unlimited())
        .is_refuted());
    assert!(target
        .nullhomotopic(&domain, &[1, 1], &Budget::unlimited())
        .is_found());
}
