//! Test-side oracles: exhaustive poset enumeration, brute-force homotopy and
//! brute-force minimal good coverings. Nothing here calls the search code.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use fintop::homotopy::{
    is_nullhomotopic_inclusion, Budget, Decision, Limits, SquareSpace,
};
use fintop::search::Invariant;
use fintop::space::{product, FiniteSpace, SpaceKind};
use rand::Rng;

pub fn explicit(n: usize, relation: &[(usize, usize)]) -> FiniteSpace {
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    FiniteSpace::from_relation(labels, relation, SpaceKind::Explicit).unwrap()
}

/// A random order on `n` points: each pair `i < j` is related with
/// probability `density`, then closed transitively.
pub fn random_space<R: Rng>(rng: &mut R, n: usize, density: f64) -> FiniteSpace {
    let mut relation = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(density) {
                relation.push((i, j));
            }
        }
    }
    explicit(n, &relation)
}

/// Like [`random_space`] but retried until connected.
pub fn random_connected_space<R: Rng>(rng: &mut R, n: usize, density: f64) -> FiniteSpace {
    loop {
        let s = random_space(rng, n, density);
        if s.is_connected_space() {
            return s;
        }
    }
}

/// Strict order as a bitmask over pairs `(i, j)`, index `i * n + j`.
fn strict_pairs(space: &FiniteSpace) -> u64 {
    let n = space.len();
    let mut bits = 0u64;
    for i in 0..n {
        for j in 0..n {
            if i != j && space.leq(i, j) {
                bits |= 1 << (i * n + j);
            }
        }
    }
    bits
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Smallest relation bitmask over all relabelings.
fn canonical_form(space: &FiniteSpace, perms: &[Vec<usize>]) -> u64 {
    let n = space.len();
    perms
        .iter()
        .map(|p| {
            let mut bits = 0u64;
            for i in 0..n {
                for j in 0..n {
                    if i != j && space.leq(i, j) {
                        bits |= 1 << (p[i] * n + p[j]);
                    }
                }
            }
            bits
        })
        .min()
        .unwrap()
}

/// Every connected order on exactly `n` points (n ≤ 6), one per
/// isomorphism class.
pub fn connected_spaces(n: usize) -> Vec<FiniteSpace> {
    assert!((1..=6).contains(&n));
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    // Every order has a linear extension, so relabeling lets us assume
    // i < j whenever i ≤ j.
    for subset in 0u32..1 << pairs.len() {
        let relation: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|&(b, _)| subset >> b & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let space = explicit(n, &relation);
        // Keep only transitively closed subsets, so each order appears once.
        if strict_pairs(&space).count_ones() as usize != relation.len() {
            continue;
        }
        if !space.is_connected_space() {
            continue;
        }
        if seen.insert(canonical_form(&space, &perms)) {
            out.push(space);
        }
    }
    out
}

/// All order-preserving maps `domain → codomain`, by backtracking along a
/// linear extension.
pub fn all_maps(domain: &FiniteSpace, codomain: &FiniteSpace) -> Vec<Vec<usize>> {
    let order = domain.linear_extension();
    let mut out = Vec::new();
    let mut f = vec![usize::MAX; domain.len()];
    fn go(
        k: usize,
        order: &[usize],
        domain: &FiniteSpace,
        codomain: &FiniteSpace,
        f: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == order.len() {
            out.push(f.clone());
            return;
        }
        let p = order[k];
        for v in 0..codomain.len() {
            let ok = order[..k].iter().all(|&q| {
                (!domain.leq(q, p) || codomain.leq(f[q], v))
                    && (!domain.leq(p, q) || codomain.leq(v, f[q]))
            });
            if ok {
                f[p] = v;
                go(k + 1, order, domain, codomain, f, out);
            }
        }
        f[p] = usize::MAX;
    }
    go(0, &order, domain, codomain, &mut f, &mut out);
    out
}

fn pointwise_comparable(codomain: &FiniteSpace, f: &[usize], g: &[usize]) -> bool {
    f.iter().zip(g).all(|(&a, &b)| codomain.leq(a, b))
        || f.iter().zip(g).all(|(&a, &b)| codomain.leq(b, a))
}

/// `f ≃ g` by breadth-first search over all maps, edges joining pointwise
/// comparable maps. Only for tiny hom-sets.
pub fn brute_homotopic(
    domain: &FiniteSpace,
    codomain: &FiniteSpace,
    f: &[usize],
    g: &[usize],
) -> bool {
    let maps = all_maps(domain, codomain);
    let start = maps.iter().position(|m| m == f).expect("f is continuous");
    let mut seen = vec![false; maps.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        if maps[i] == g {
            return true;
        }
        for j in 0..maps.len() {
            if !seen[j] && pointwise_comparable(codomain, &maps[i], &maps[j]) {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    false
}

/// All open (down-closed) subsets of a space with at most 64 points, as
/// bitmasks.
pub fn open_sets(space: &FiniteSpace) -> Vec<u64> {
    assert!(space.len() <= 64);
    let order = space.linear_extension();
    let mut out = Vec::new();
    fn go(k: usize, order: &[usize], space: &FiniteSpace, set: u64, out: &mut Vec<u64>) {
        if k == order.len() {
            out.push(set);
            return;
        }
        let p = order[k];
        go(k + 1, order, space, set, out);
        // p may join only if everything below it already has.
        if space.down(p).iter().all(|q| q == p || set >> q & 1 == 1) {
            go(k + 1, order, space, set | 1 << p, out);
        }
    }
    go(0, &order, space, 0, &mut out);
    out
}

/// Least number of good open sets covering the target, by brute force over
/// every open subset. Goodness is decided by the homotopy engine with no
/// limits; the covering itself uses nothing from the search.
pub fn brute_force_invariant(invariant: Invariant, space: &FiniteSpace) -> usize {
    let space = Arc::new(space.clone());
    let (target, square) = match invariant {
        Invariant::Cat => (space.clone(), None),
        Invariant::Tc => {
            let sq = SquareSpace::new(space.clone());
            (Arc::new(product(&space, &space)), Some(sq))
        }
    };
    let budget = Budget::unlimited();
    let good = |mask: u64| -> bool {
        let set = fintop::space::PointSet::from_indices(
            target.len(),
            (0..target.len()).filter(|&p| mask >> p & 1 == 1),
        );
        let decision = match &square {
            Some(sq) => sq.admits_planner(&set, &budget).unwrap().map(|_| ()),
            None => is_nullhomotopic_inclusion(&set, &target, &budget)
                .unwrap()
                .map(|_| ()),
        };
        match decision {
            Decision::Found(()) => true,
            Decision::Refuted { .. } => false,
            Decision::Inconclusive { .. } => panic!("unlimited budget ran out"),
        }
    };
    let full = if target.len() == 64 {
        u64::MAX
    } else {
        (1u64 << target.len()) - 1
    };
    if good(full) {
        return 1;
    }
    let mut opens = open_sets(&target);
    opens.retain(|&m| m != 0);
    // Smallest first: an open set containing a bad open set is bad, since
    // restricting a planner or nullhomotopy to an open subset keeps it.
    opens.sort_by_key(|m| m.count_ones());
    let mut bad: Vec<u64> = Vec::new();
    let mut good_sets: Vec<u64> = Vec::new();
    for &m in &opens {
        if bad.iter().any(|&b| b & !m == 0) {
            continue;
        }
        if good(m) {
            good_sets.push(m);
        } else {
            bad.push(m);
        }
    }
    let maximal_good: Vec<u64> = good_sets
        .iter()
        .copied()
        .filter(|&m| !good_sets.iter().any(|&g| g != m && m & !g == 0))
        .collect();
    // Any good cover can be enlarged to one by maximal good sets.
    for k in 1.. {
        if covers_with(&maximal_good, k, 0, full) {
            return k;
        }
    }
    unreachable!()
}

fn covers_with(sets: &[u64], k: usize, covered: u64, full: u64) -> bool {
    if covered == full {
        return true;
    }
    if k == 0 {
        return false;
    }
    // Branch on the sets covering the lowest uncovered point.
    let p = (!covered & full).trailing_zeros();
    sets.iter()
        .filter(|&&s| s >> p & 1 == 1)
        .any(|&s| covers_with(sets, k - 1, covered | s, full))
}

pub fn unlimited() -> Limits {
    Limits {
        max_visited: usize::MAX,
        max_seconds: None,
    }
}
