//! Goodness decisions for blocks, i.e. unions of downsets of maximal points
//! of the search target, with caching in both directions: a subset of a good
//! block is good (restrict the witness fence) and a superset of a bad block
//! is bad.

use std::sync::Arc;

use crate::homotopy::{
    fiber_obstruction, is_contractible, Budget, ContinuousMap, Decision, Fence, HomotopyTarget,
    Limits, SquareSpace,
};
use crate::space::{product, FiniteSpace, PointSet};

use super::report::{Invariant, Reason};

/// Shape of a product target `A × B`, for the fiber obstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Fibers {
    pub left_len: usize,
    pub right_len: usize,
    pub left_contractible: bool,
    pub right_contractible: bool,
}

impl Fibers {
    pub fn obstructs(&self, set: &PointSet) -> bool {
        fiber_obstruction(
            set,
            self.left_len,
            self.right_len,
            self.left_contractible,
            self.right_contractible,
        )
    }
}

/// The factors of a space built as a product, recovered from its recorded
/// construction and checked against the space itself.
pub(crate) fn product_factors(space: &FiniteSpace) -> Option<(FiniteSpace, FiniteSpace)> {
    let crate::space::SpaceKind::Product(a, b) = space.kind() else {
        return None;
    };
    let a = a.rebuild()?.ok()?;
    let b = b.rebuild()?.ok()?;
    (product(&a, &b) == *space).then_some((a, b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Verdict {
    Good,
    Bad { witness: u64, reason: Reason },
    Inconclusive,
}

#[derive(Debug)]
enum Decider {
    Cat(HomotopyTarget),
    Tc(SquareSpace),
}

#[derive(Debug)]
pub(crate) struct BlockOracle {
    invariant: Invariant,
    target: Arc<FiniteSpace>,
    decider: Decider,
    fibers: Option<Fibers>,
    maximal: Vec<usize>,
    downs: Vec<PointSet>,
    good: Vec<(u64, Fence)>,
    bad: Vec<(u64, Reason)>,
    budget: Budget,
    decisions: usize,
}

impl BlockOracle {
    pub fn new(invariant: Invariant, space: &Arc<FiniteSpace>, limits: &Limits) -> Self {
        let (target, decider, fibers) = match invariant {
            Invariant::Tc => {
                let square = SquareSpace::new(space.clone());
                let c = square.is_base_contractible();
                let fibers = Fibers {
                    left_len: space.len(),
                    right_len: space.len(),
                    left_contractible: c,
                    right_contractible: c,
                };
                (square.square().clone(), Decider::Tc(square), Some(fibers))
            }
            Invariant::Cat => {
                let fibers = product_factors(space).map(|(a, b)| Fibers {
                    left_len: a.len(),
                    right_len: b.len(),
                    left_contractible: is_contractible(&a),
                    right_contractible: is_contractible(&b),
                });
                let target = HomotopyTarget::new(space.clone());
                (space.clone(), Decider::Cat(target), fibers)
            }
        };
        let maximal = target.maximal_points().to_vec();
        let downs = maximal.iter().map(|&m| target.down(m).clone()).collect();
        Self {
            invariant,
            target,
            decider,
            fibers,
            maximal,
            downs,
            good: Vec::new(),
            bad: Vec::new(),
            budget: limits.start(),
            decisions: 0,
        }
    }

    pub fn invariant(&self) -> Invariant {
        self.invariant
    }

    pub fn target(&self) -> &Arc<FiniteSpace> {
        &self.target
    }

    pub fn maximal(&self) -> &[usize] {
        &self.maximal
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn decisions(&self) -> usize {
        self.decisions
    }

    pub fn block_set(&self, mask: u64) -> PointSet {
        let mut set = self.target.empty_set();
        for (i, down) in self.downs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                set.union_with(down);
            }
        }
        set
    }

    /// The mask of maximal points lying in the open set `set`.
    pub fn mask_of(&self, set: &PointSet) -> u64 {
        self.maximal
            .iter()
            .enumerate()
            .filter(|&(_, &m)| set.contains(m))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    pub fn obstructed(&self, mask: u64) -> bool {
        self.fibers
            .is_some_and(|f| f.obstructs(&self.block_set(mask)))
    }

    /// Decisions that need no homotopy search: the obstruction, then cached
    /// bad subsets.
    pub fn cheap(&mut self, mask: u64) -> Option<(u64, Reason)> {
        if self.obstructed(mask) {
            self.remember_bad(mask, Reason::RowColumn);
            return Some((mask, Reason::RowColumn));
        }
        self.bad
            .iter()
            .find(|&&(b, _)| b & !mask == 0)
            .copied()
    }

    fn remember_bad(&mut self, mask: u64, reason: Reason) {
        if !self.bad.iter().any(|&(b, _)| b == mask) {
            self.bad.push((mask, reason));
        }
    }

    pub fn remember_good(&mut self, mask: u64, fence: Fence) {
        debug_assert_eq!(**fence.domain(), self.target.subspace(&self.block_set(mask)).0);
        self.good.push((mask, fence));
    }

    pub fn decide(&mut self, mask: u64) -> Verdict {
        if let Some((witness, reason)) = self.cheap(mask) {
            return Verdict::Bad { witness, reason };
        }
        if self.good.iter().any(|&(g, _)| mask & !g == 0) {
            return Verdict::Good;
        }
        let set = self.block_set(mask);
        self.decisions += 1;
        let decision = match &self.decider {
            Decider::Tc(square) => square
                .admits_planner(&set, &self.budget)
                .expect("blocks are open and nonempty")
                .map(|cert| cert.fence),
            Decider::Cat(target) => {
                let inclusion = ContinuousMap::inclusion(&self.target, &set);
                target.nullhomotopic(inclusion.domain(), inclusion.assignment(), &self.budget)
            }
        };
        match decision {
            Decision::Found(fence) => {
                self.good.push((mask, fence));
                Verdict::Good
            }
            Decision::Refuted { explored } => {
                log::debug!("block {mask:#x} refuted after {explored} maps");
                self.remember_bad(mask, Reason::HomPosetExhaustion);
                Verdict::Bad {
                    witness: mask,
                    reason: Reason::HomPosetExhaustion,
                }
            }
            Decision::Inconclusive { explored, cause } => {
                log::debug!("block {mask:#x} inconclusive ({cause:?}) after {explored} maps");
                Verdict::Inconclusive
            }
        }
    }

    /// Witness fence for a block already decided good.
    pub fn witness(&self, mask: u64) -> Fence {
        let (g, fence) = self
            .good
            .iter()
            .find(|&&(g, _)| mask & !g == 0)
            .expect("block was decided good");
        if *g == mask {
            return fence.clone();
        }
        let outer = self.block_set(*g);
        let inner = self.block_set(mask);
        let local = PointSet::from_indices(
            outer.len(),
            outer
                .iter()
                .enumerate()
                .filter(|&(_, p)| inner.contains(p))
                .map(|(i, _)| i),
        );
        fence.restrict(&local).compressed()
    }
}
