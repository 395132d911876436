//! Beat points and cores.
//!
//! `x` is a down beat point when `x↓ − {x}` has a unique maximal element and
//! an up beat point when `x↑ − {x}` has a unique minimal element. Removing a
//! beat point is a strong deformation retraction; repeating until none are
//! left gives the core, which is a single point exactly when the space is
//! contractible.

use std::sync::Arc;

use super::map::Dir;
use crate::space::{FiniteSpace, PointSet};

/// The unique maximal element of `strict` if there is exactly one.
fn unique_top(space: &FiniteSpace, strict: &PointSet) -> Option<usize> {
    let mut tops = strict
        .iter()
        .filter(|&a| space.up(a).intersection_count(strict) == 1);
    let first = tops.next()?;
    tops.next().is_none().then_some(first)
}

fn unique_bottom(space: &FiniteSpace, strict: &PointSet) -> Option<usize> {
    let mut bottoms = strict
        .iter()
        .filter(|&a| space.down(a).intersection_count(strict) == 1);
    let first = bottoms.next()?;
    bottoms.next().is_none().then_some(first)
}

/// Beat status of `x` inside the subspace `alive`: the point it retracts to
/// and the direction of the retraction relative to the identity.
fn beat_target(space: &FiniteSpace, alive: &PointSet, x: usize) -> Option<(usize, Dir)> {
    let mut strict_below = space.down(x).intersection(alive);
    strict_below.remove(x);
    if let Some(t) = unique_top(space, &strict_below) {
        // r(x) = t < x, so id ≥ r.
        return Some((t, Dir::Ge));
    }
    let mut strict_above = space.up(x).intersection(alive);
    strict_above.remove(x);
    unique_bottom(space, &strict_above).map(|t| (t, Dir::Le))
}

/// Points that are beat points of the space.
pub fn beat_points(space: &FiniteSpace) -> PointSet {
    let alive = space.full_set();
    PointSet::from_indices(
        space.len(),
        (0..space.len()).filter(|&x| beat_target(space, &alive, x).is_some()),
    )
}

/// Result of repeatedly removing the lowest-index beat point.
#[derive(Debug, Clone)]
pub struct CoreReduction {
    core: Arc<FiniteSpace>,
    /// Core point index → index in the original space.
    embedding: Vec<usize>,
    /// Original index → core point index.
    position: Vec<usize>,
    /// Original index → original index of its image under the retraction.
    retraction: Vec<usize>,
    /// Removed points in removal order.
    removed: Vec<usize>,
    /// Self-maps `g₁, g₂, …` of the space with `id = g₀ ⋚ g₁ ⋚ ⋯`, ending
    /// at `inclusion ∘ retraction`.
    chain: Vec<(Vec<usize>, Dir)>,
}

impl CoreReduction {
    pub fn new(space: &FiniteSpace) -> Self {
        let n = space.len();
        let mut alive = space.full_set();
        let mut current: Vec<usize> = (0..n).collect();
        let mut chain = Vec::new();
        let mut removed = Vec::new();
        loop {
            let next = alive
                .iter()
                .find_map(|x| beat_target(space, &alive, x).map(|(t, d)| (x, t, d)));
            let Some((x, target, dir)) = next else { break };
            alive.remove(x);
            for p in current.iter_mut() {
                if *p == x {
                    *p = target;
                }
            }
            chain.push((current.clone(), dir));
            removed.push(x);
        }
        let (core, embedding) = space.subspace(&alive);
        let mut position = vec![usize::MAX; n];
        for (i, &p) in embedding.iter().enumerate() {
            position[p] = i;
        }
        Self {
            core: Arc::new(core),
            embedding,
            position,
            retraction: current,
            removed,
            chain,
        }
    }

    pub fn core(&self) -> &Arc<FiniteSpace> {
        &self.core
    }

    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    pub fn removed(&self) -> &[usize] {
        &self.removed
    }

    /// The retraction onto the core, as core indices.
    #[inline]
    pub fn retract(&self, point: usize) -> usize {
        self.position[self.retraction[point]]
    }

    /// The retraction as a self-map of the original space.
    pub fn retraction(&self) -> &[usize] {
        &self.retraction
    }

    #[inline]
    pub fn embed(&self, core_point: usize) -> usize {
        self.embedding[core_point]
    }

    pub fn chain(&self) -> &[(Vec<usize>, Dir)] {
        &self.chain
    }

    pub fn is_point(&self) -> bool {
        self.core.len() == 1
    }
}

/// Core of a finite space: beat points removed one at a time, lowest index
/// first, until none remain.
pub fn core(space: &FiniteSpace) -> FiniteSpace {
    CoreReduction::new(space).core.as_ref().clone()
}

/// A finite T0 space is contractible exactly when its core is one point.
pub fn is_contractible(space: &FiniteSpace) -> bool {
    CoreReduction::new(space).is_point()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{circle_model, interval_model, nh_suspension, sphere_model};

    #[test]
    fn interval_beat_points() {
        let j = interval_model(2).unwrap();
        assert_eq!(beat_points(&j).to_vec(), vec![0, 2]);
        for m in 0..8 {
            let j = interval_model(m).unwrap();
            assert_eq!(core(&j).len(), 1);
            assert!(is_contractible(&j));
        }
    }

    #[test]
    fn circles_are_minimal() {
        for n in 2..8 {
            let c = circle_model(n).unwrap();
            assert!(beat_points(&c).is_empty());
            assert_eq!(core(&c), c);
            assert!(!is_contractible(&c));
        }
    }

    #[test]
    fn punctured_circle() {
        let c = circle_model(3).unwrap();
        let mut set = c.full_set();
        set.remove(c.index_of("y1").unwrap());
        let (punctured, _) = c.subspace(&set);
        let beats = punctured.set_labels(&beat_points(&punctured));
        assert!(beats.contains(&"x0".to_string()));
        assert!(beats.contains(&"x1".to_string()));
        assert_eq!(core(&punctured).len(), 1);
    }

    #[test]
    fn spheres_and_suspensions() {
        for n in 0..5 {
            assert!(!is_contractible(&sphere_model(n).unwrap()));
        }
        for m in 0..6 {
            assert!(is_contractible(&nh_suspension(&interval_model(m).unwrap())));
        }
    }

    #[test]
    fn retraction_chain_ends_at_retraction() {
        let j = interval_model(5).unwrap();
        let red = CoreReduction::new(&j);
        let (last, _) = red.chain().last().unwrap();
        assert_eq!(last.as_slice(), red.retraction());
        assert!(red.retraction().iter().all(|&p| p == red.embed(0)));
    }
}
