//! Homotopy decisions for maps between finite spaces.
//!
//! Two continuous maps `f, g: D → C` are homotopic exactly when they lie in
//! the same connected component of the poset of continuous maps (pointwise
//! order), i.e. when a [`Fence`] joins them. Components are searched
//! breadth-first after shrinking both `D` and `C` to their cores:
//! precomposing with the core inclusion of `D` and postcomposing with the
//! core retraction of `C` is a bijection on homotopy classes, so the reduced
//! search answers the original question, and the retraction chains let the
//! reduced fence be lifted back to a fence between `f` and `g` themselves.

mod beat;
mod bfs;
mod fence;
mod map;
mod planner;

use std::sync::Arc;

use thiserror::Error;

pub use beat::{beat_points, core, is_contractible, CoreReduction};
pub use bfs::{Budget, Decision, LimitCause, Limits};
pub use fence::{Fence, FenceError};
pub use map::{ContinuousMap, Dir, MapError};
pub use planner::{
    fiber_obstruction, row_column_obstruction, CertificateError, PlannerCertificate, SquareSpace,
};

use bfs::{connect, Goal};
pub(crate) use fence::{comparability_path, compress};

use crate::space::{FiniteSpace, PointSet};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum HomotopyError {
    #[error("set is not open")]
    NotOpen,
    #[error("set is empty")]
    EmptySet,
    #[error("set does not belong to this space")]
    WrongUniverse,
    #[error(transparent)]
    Map(#[from] MapError),
}

/// A codomain with its core reduction precomputed, for answering many
/// homotopy questions about maps into the same space.
#[derive(Debug, Clone)]
pub struct HomotopyTarget {
    space: Arc<FiniteSpace>,
    reduction: CoreReduction,
}

impl HomotopyTarget {
    pub fn new(space: Arc<FiniteSpace>) -> Self {
        let reduction = CoreReduction::new(&space);
        Self { space, reduction }
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn is_contractible(&self) -> bool {
        self.reduction.is_point()
    }

    pub fn reduction(&self) -> &CoreReduction {
        &self.reduction
    }

    /// Decides whether `f ≃ g` for maps `domain → self.space`, given as
    /// assignments.
    pub fn homotopic(
        &self,
        domain: &Arc<FiniteSpace>,
        f: &[usize],
        g: &[usize],
        budget: &Budget,
    ) -> Decision<Fence> {
        self.split_connect(domain, f, Some(g), budget)
    }

    /// Decides whether `f` is homotopic to some constant map; the fence ends
    /// at the constant it reaches.
    pub fn nullhomotopic(
        &self,
        domain: &Arc<FiniteSpace>,
        f: &[usize],
        budget: &Budget,
    ) -> Decision<Fence> {
        self.split_connect(domain, f, None, budget)
    }

    /// Moves one component of the domain at a time, holding the others
    /// fixed. A nullhomotopy then walks every component's constant to the
    /// first one, which needs them in one component of the codomain.
    fn split_connect(
        &self,
        domain: &Arc<FiniteSpace>,
        f: &[usize],
        g: Option<&[usize]>,
        budget: &Budget,
    ) -> Decision<Fence> {
        let components = domain.components(&domain.full_set());
        if components.len() <= 1 {
            return self.reduced_connect(domain, f, g, budget);
        }
        let mut current = f.to_vec();
        let mut maps = vec![current.clone()];
        let mut dirs = Vec::new();
        let mut ends = Vec::new();
        for comp in &components {
            let (sub, embedding) = domain.subspace(comp);
            let restrict = |h: &[usize]| embedding.iter().map(|&q| h[q]).collect::<Vec<_>>();
            let goal = g.map(restrict);
            match self.reduced_connect(&Arc::new(sub), &restrict(f), goal.as_deref(), budget) {
                Decision::Found(fence) => {
                    for (step, &d) in fence.maps()[1..].iter().zip(fence.dirs()) {
                        for (&q, &v) in embedding.iter().zip(step) {
                            current[q] = v;
                        }
                        maps.push(current.clone());
                        dirs.push(d);
                    }
                    let end = current[embedding[0]];
                    ends.push((embedding, end));
                }
                Decision::Refuted { explored } => return Decision::Refuted { explored },
                Decision::Inconclusive { explored, cause } => {
                    return Decision::Inconclusive { explored, cause }
                }
            }
        }
        if g.is_none() {
            let target = ends[0].1;
            let reach = self.space.components(&self.space.full_set());
            let home = reach.iter().find(|c| c.contains(target)).expect("point has a component");
            if ends.iter().any(|&(_, c)| !home.contains(c)) {
                return Decision::Refuted { explored: 0 };
            }
            for (embedding, c) in &ends[1..] {
                for (z, d) in comparability_path(&self.space, *c, target) {
                    for &q in embedding {
                        current[q] = z;
                    }
                    maps.push(current.clone());
                    dirs.push(d);
                }
            }
        }
        let (maps, dirs) = compress(maps, dirs);
        Decision::Found(Fence::new_unchecked(domain.clone(), self.space.clone(), maps, dirs))
    }

    fn reduced_connect(
        &self,
        domain: &Arc<FiniteSpace>,
        f: &[usize],
        g: Option<&[usize]>,
        budget: &Budget,
    ) -> Decision<Fence> {
        debug_assert!(map::check_assignment(domain, &self.space, f).is_ok());
        if domain.is_empty() {
            let fence = Fence::new_unchecked(
                domain.clone(),
                self.space.clone(),
                vec![Vec::new()],
                Vec::new(),
            );
            return Decision::Found(fence);
        }
        let cod = &self.reduction;
        // With a one-point codomain core every map reduces to the same map
        // out of a point, so the domain is not reduced at all.
        let dom = (!cod.is_point()).then(|| CoreReduction::new(domain));
        let reduced_domain: Arc<FiniteSpace> = match &dom {
            Some(d) => d.core().clone(),
            None => Arc::new(crate::space::point()),
        };
        let reduce = |h: &[usize]| -> Vec<usize> {
            (0..reduced_domain.len())
                .map(|i| cod.retract(h[dom.as_ref().map_or(0, |d| d.embed(i))]))
                .collect()
        };
        let lift = |psi: &[usize]| -> Vec<usize> {
            (0..domain.len())
                .map(|q| cod.embed(psi[dom.as_ref().map_or(0, |d| d.retract(q))]))
                .collect()
        };
        // h = h∘g₀ ⋚ h∘g₁ ⋚ ⋯ ⋚ h∘r_D, then c₁∘(h∘r_D) ⋚ ⋯ ⋚ r_C∘h∘r_D,
        // which is the lift of the reduced map of h.
        let prefix = |h: &[usize]| -> (Vec<Vec<usize>>, Vec<Dir>) {
            let mut maps = vec![h.to_vec()];
            let mut dirs = Vec::new();
            for (step, d) in dom.iter().flat_map(|d| d.chain()) {
                maps.push(step.iter().map(|&q| h[q]).collect());
                dirs.push(*d);
            }
            let base = maps.last().unwrap().clone();
            for (step, d) in cod.chain() {
                maps.push(base.iter().map(|&p| step[p]).collect());
                dirs.push(*d);
            }
            (maps, dirs)
        };

        let start = reduce(f);
        let reduced_goal = g.map(reduce);
        let goal = match &reduced_goal {
            Some(rg) => Goal::Map(rg),
            None => Goal::AnyConstant,
        };
        let decision = connect(&reduced_domain, cod.core(), &start, goal, budget);
        decision.map(|(path, path_dirs)| {
            let (mut maps, mut dirs) = prefix(f);
            maps.extend(path[1..].iter().map(|psi| lift(psi)));
            dirs.extend(path_dirs);
            if let Some(g) = g {
                let (g_maps, g_dirs) = prefix(g);
                maps.extend(g_maps.into_iter().rev().skip(1));
                dirs.extend(g_dirs.into_iter().rev().map(Dir::flip));
            }
            let (maps, dirs) = compress(maps, dirs);
            Fence::new_unchecked(domain.clone(), self.space.clone(), maps, dirs)
        })
    }
}

/// Decides `f ≃ g`, returning a fence from `f` to `g` when they are.
pub fn homotopic(
    f: &ContinuousMap,
    g: &ContinuousMap,
    budget: &Budget,
) -> Result<Decision<Fence>, HomotopyError> {
    if f.domain() != g.domain() || f.codomain() != g.codomain() {
        return Err(MapError::Incompatible.into());
    }
    let target = HomotopyTarget::new(f.codomain().clone());
    Ok(target.homotopic(f.domain(), f.assignment(), g.assignment(), budget))
}

/// Decides whether the inclusion of the open set `set` into `space` is
/// nullhomotopic; the fence runs from the inclusion to a constant map.
pub fn is_nullhomotopic_inclusion(
    set: &PointSet,
    space: &Arc<FiniteSpace>,
    budget: &Budget,
) -> Result<Decision<Fence>, HomotopyError> {
    if set.universe() != space.len() {
        return Err(HomotopyError::WrongUniverse);
    }
    if set.is_empty() {
        return Err(HomotopyError::EmptySet);
    }
    if !space.is_open(set) {
        return Err(HomotopyError::NotOpen);
    }
    let inclusion = ContinuousMap::inclusion(space, set);
    let target = HomotopyTarget::new(space.clone());
    Ok(target.nullhomotopic(inclusion.domain(), inclusion.assignment(), budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{circle_model, discrete, interval_model, sphere_model};

    fn unlimited() -> Budget {
        Budget::unlimited()
    }

    #[test]
    fn identity_of_circle_is_essential() {
        let c = Arc::new(circle_model(3).unwrap());
        let id = ContinuousMap::identity(c.clone());
        let target = HomotopyTarget::new(c.clone());
        let d = target.nullhomotopic(&c, id.assignment(), &unlimited());
        assert!(d.is_refuted());
        let full = c.full_set();
        assert!(is_nullhomotopic_inclusion(&full, &c, &unlimited())
            .unwrap()
            .is_refuted());
    }

    #[test]
    fn interval_identity_is_nullhomotopic() {
        let j = Arc::new(interval_model(4).unwrap());
        let full = j.full_set();
        let d = is_nullhomotopic_inclusion(&full, &j, &unlimited()).unwrap();
        let fence = d.found().unwrap();
        fence.verify().unwrap();
        assert_eq!(fence.maps()[0], (0..5).collect::<Vec<_>>());
        assert!(fence.last().is_constant());
    }

    #[test]
    fn rotation_of_minimal_circle_is_not_homotopic_to_identity() {
        let c = Arc::new(circle_model(4).unwrap());
        let n = 4;
        let rotation: Vec<usize> = (0..2 * n)
            .map(|p| (p / n) * n + (p % n + 1) % n)
            .collect();
        let rot = ContinuousMap::new(c.clone(), c.clone(), rotation).unwrap();
        let id = ContinuousMap::identity(c.clone());
        assert!(homotopic(&rot, &id, &unlimited()).unwrap().is_refuted());
        assert!(homotopic(&id, &id, &unlimited()).unwrap().is_found());
    }

    #[test]
    fn constants_in_connected_and_disconnected_targets() {
        let c = Arc::new(sphere_model(2).unwrap());
        let dom = Arc::new(interval_model(3).unwrap());
        let a = ContinuousMap::constant(dom.clone(), c.clone(), 0);
        let b = ContinuousMap::constant(dom.clone(), c.clone(), 5);
        let fence = homotopic(&a, &b, &unlimited()).unwrap();
        let fence = fence.found().unwrap();
        fence.verify().unwrap();
        assert_eq!(fence.maps()[0], a.assignment());
        assert_eq!(fence.maps().last().unwrap(), b.assignment());

        let d2 = Arc::new(discrete(2).unwrap());
        let a = ContinuousMap::constant(dom.clone(), d2.clone(), 0);
        let b = ContinuousMap::constant(dom, d2, 1);
        assert!(homotopic(&a, &b, &unlimited()).unwrap().is_refuted());
    }

    #[test]
    fn open_sets_of_circle() {
        let c = Arc::new(circle_model(3).unwrap());
        let arc = c.down_closure(&c.set_of(&["y0", "y1"]).unwrap());
        let d = is_nullhomotopic_inclusion(&arc, &c, &unlimited()).unwrap();
        let fence = d.found().unwrap();
        fence.verify().unwrap();
        assert_eq!(fence.first(), ContinuousMap::inclusion(&c, &arc));
        let not_open = c.set_of(&["y0"]).unwrap();
        assert_eq!(
            is_nullhomotopic_inclusion(&not_open, &c, &unlimited()),
            Err(HomotopyError::NotOpen)
        );
    }

    #[test]
    fn planners_on_minimal_neighbourhoods() {
        let sq = SquareSpace::new(Arc::new(circle_model(2).unwrap()));
        for m in sq.square().maximal_points().iter() {
            let set = sq.square().down(m).clone();
            let cert = sq.admits_planner(&set, &unlimited()).unwrap();
            let cert = cert.found().expect("contractible block");
            cert.verify(&sq).unwrap();
        }
        assert!(sq
            .admits_planner(&sq.square().full_set(), &unlimited())
            .unwrap()
            .is_refuted());
    }

    #[test]
    fn row_obstruction_agrees_with_search() {
        let sq = SquareSpace::new(Arc::new(circle_model(2).unwrap()));
        let n = sq.base().len();
        let z = sq.base().index_of("y0").unwrap();
        let column = PointSet::from_indices(n * n, (0..n).map(|a| sq.pair(a, z)));
        let set = sq.square().down_closure(&column);
        assert!(sq.obstructed(&set));
        assert!(sq.admits_planner(&set, &unlimited()).unwrap().is_refuted());

        let contractible = SquareSpace::new(Arc::new(interval_model(2).unwrap()));
        let full = contractible.square().full_set();
        assert!(!contractible.obstructed(&full));
        let cert = contractible.admits_planner(&full, &unlimited()).unwrap();
        cert.found().unwrap().verify(&contractible).unwrap();
    }

    #[test]
    fn limits_make_answers_inconclusive() {
        let s = Arc::new(sphere_model(3).unwrap());
        let dom = Arc::new(interval_model(3).unwrap());
        let target = HomotopyTarget::new(s.clone());
        let tight = Limits {
            max_visited: 2,
            max_seconds: None,
        };
        let (a, b) = (vec![0; 4], vec![7; 4]);
        assert!(target.homotopic(&dom, &a, &b, &tight.start()).is_inconclusive());
        assert!(target.homotopic(&dom, &a, &b, &unlimited()).is_found());
        let expired = Limits {
            max_visited: usize::MAX,
            max_seconds: Some(0.0),
        };
        assert!(target.homotopic(&dom, &a, &b, &expired.start()).is_inconclusive());
    }
}
