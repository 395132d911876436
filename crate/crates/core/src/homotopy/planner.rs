//! Motion planners on open subsets of `X × X`.
//!
//! An open `Q ⊆ X × X` admits a continuous motion planner exactly when the
//! two projections restricted to `Q` are homotopic as maps `Q → X`.

use std::sync::Arc;

use thiserror::Error;

use super::bfs::{Budget, Decision};
use super::fence::{Fence, FenceError};
use super::map::ContinuousMap;
use super::{HomotopyError, HomotopyTarget};
use crate::space::{product, FiniteSpace, PointSet};

/// `X` together with `X × X` (left-major: index `a·n + b` is `(a, b)`) and
/// the precomputed core reduction of `X`.
#[derive(Debug, Clone)]
pub struct SquareSpace {
    base: Arc<FiniteSpace>,
    square: Arc<FiniteSpace>,
    target: HomotopyTarget,
}

impl SquareSpace {
    pub fn new(base: Arc<FiniteSpace>) -> Self {
        let square = Arc::new(product(&base, &base));
        let target = HomotopyTarget::new(base.clone());
        Self {
            base,
            square,
            target,
        }
    }

    pub fn base(&self) -> &Arc<FiniteSpace> {
        &self.base
    }

    pub fn square(&self) -> &Arc<FiniteSpace> {
        &self.square
    }

    pub fn is_base_contractible(&self) -> bool {
        self.target.is_contractible()
    }

    #[inline]
    pub fn pair(&self, a: usize, b: usize) -> usize {
        a * self.base.len() + b
    }

    #[inline]
    pub fn pr1(&self, q: usize) -> usize {
        q / self.base.len()
    }

    #[inline]
    pub fn pr2(&self, q: usize) -> usize {
        q % self.base.len()
    }

    fn check(&self, set: &PointSet) -> Result<(), HomotopyError> {
        if set.universe() != self.square.len() {
            return Err(HomotopyError::WrongUniverse);
        }
        if set.is_empty() {
            return Err(HomotopyError::EmptySet);
        }
        if !self.square.is_open(set) {
            return Err(HomotopyError::NotOpen);
        }
        Ok(())
    }

    /// The projections `pr₁|Q, pr₂|Q : Q → X`, with the induced subspace on
    /// `Q` as their common domain.
    pub fn projection_maps(&self, set: &PointSet) -> (ContinuousMap, ContinuousMap) {
        let (sub, embedding) = self.square.subspace(set);
        let sub = Arc::new(sub);
        let p1 = embedding.iter().map(|&q| self.pr1(q)).collect();
        let p2 = embedding.iter().map(|&q| self.pr2(q)).collect();
        (
            ContinuousMap::new_unchecked(sub.clone(), self.base.clone(), p1),
            ContinuousMap::new_unchecked(sub, self.base.clone(), p2),
        )
    }

    /// Decides whether the open set `set` admits a motion planner, i.e.
    /// whether `pr₁|Q ≃ pr₂|Q`.
    pub fn admits_planner(
        &self,
        set: &PointSet,
        budget: &Budget,
    ) -> Result<Decision<PlannerCertificate>, HomotopyError> {
        self.check(set)?;
        let (p1, p2) = self.projection_maps(set);
        let decision = self
            .target
            .homotopic(p1.domain(), p1.assignment(), p2.assignment(), budget);
        Ok(decision.map(|fence| PlannerCertificate {
            block: set.clone(),
            fence,
        }))
    }

    /// See [`row_column_obstruction`].
    pub fn obstructed(&self, set: &PointSet) -> bool {
        fiber_obstruction(
            set,
            self.base.len(),
            self.base.len(),
            self.is_base_contractible(),
            self.is_base_contractible(),
        )
    }
}

/// `Q ⊆ A × B` contains a whole fiber `A × {b}` with `A` not contractible,
/// or `{a} × B` with `B` not contractible.
///
/// For `Q` open in `X × X` this rules out a planner: restricted to `X × {z}`
/// a homotopy `pr₁ ≃ pr₂` would contract `X`. In the same way a product
/// target rules out a nullhomotopic inclusion of `Q`, since projecting to the
/// factor would contract `A` (or `B`).
pub fn fiber_obstruction(
    set: &PointSet,
    left_len: usize,
    right_len: usize,
    left_contractible: bool,
    right_contractible: bool,
) -> bool {
    debug_assert_eq!(set.universe(), left_len * right_len);
    let column = |b: usize| (0..left_len).all(|a| set.contains(a * right_len + b));
    let row = |a: usize| (0..right_len).all(|b| set.contains(a * right_len + b));
    (!left_contractible && (0..right_len).any(column))
        || (!right_contractible && (0..left_len).any(row))
}

/// Sound obstruction to a motion planner on `Q ⊆ X × X`: `X` is not
/// contractible and `Q` contains a row `{z} × X` or a column `X × {z}`.
pub fn row_column_obstruction(set: &PointSet, base: &FiniteSpace, base_contractible: bool) -> bool {
    fiber_obstruction(
        set,
        base.len(),
        base.len(),
        base_contractible,
        base_contractible,
    )
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("block is not open in X × X")]
    NotOpen,
    #[error("fence domain is not the subspace on the block")]
    WrongDomain,
    #[error("fence codomain is not X")]
    WrongCodomain,
    #[error("fence does not start at the first projection")]
    WrongStart,
    #[error("fence does not end at the second projection")]
    WrongEnd,
    #[error(transparent)]
    Fence(#[from] FenceError),
}

/// An open block of `X × X` with a fence from `pr₁|Q` to `pr₂|Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlannerCertificate {
    pub block: PointSet,
    pub fence: Fence,
}

impl PlannerCertificate {
    pub fn verify(&self, square: &SquareSpace) -> Result<(), CertificateError> {
        if self.block.universe() != square.square.len() || !square.square.is_open(&self.block) {
            return Err(CertificateError::NotOpen);
        }
        let (p1, p2) = square.projection_maps(&self.block);
        if **self.fence.domain() != **p1.domain() {
            return Err(CertificateError::WrongDomain);
        }
        if **self.fence.codomain() != *square.base {
            return Err(CertificateError::WrongCodomain);
        }
        self.fence.verify()?;
        if self.fence.maps()[0] != p1.assignment() {
            return Err(CertificateError::WrongStart);
        }
        if self.fence.maps().last().unwrap() != p2.assignment() {
            return Err(CertificateError::WrongEnd);
        }
        Ok(())
    }
}
