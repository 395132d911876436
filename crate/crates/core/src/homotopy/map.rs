use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::space::{FiniteSpace, PointSet};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("assignment has {got} entries, domain has {expected} points")]
    WrongLength { expected: usize, got: usize },
    #[error("image index {0} is outside the codomain")]
    OutOfRange(usize),
    #[error("not order-preserving: `{below}` ≤ `{above}` but images are not related")]
    NotMonotone { below: String, above: String },
    #[error("maps do not share domain and codomain")]
    Incompatible,
}

/// Direction tag between consecutive maps of a fence: `Le` means
/// `fᵢ ≤ fᵢ₊₁` pointwise, `Ge` means `fᵢ ≥ fᵢ₊₁`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    Le,
    Ge,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Le => Dir::Ge,
            Dir::Ge => Dir::Le,
        }
    }

    /// Whether `a` and `b` (codomain points) stand in this relation.
    #[inline]
    pub fn holds(self, codomain: &FiniteSpace, a: usize, b: usize) -> bool {
        match self {
            Dir::Le => codomain.leq(a, b),
            Dir::Ge => codomain.leq(b, a),
        }
    }
}

/// First violated cover relation of `assignment`, if any.
pub(crate) fn monotonicity_violation(
    domain: &FiniteSpace,
    codomain: &FiniteSpace,
    assignment: &[usize],
) -> Option<(usize, usize)> {
    domain
        .hasse_edges()
        .into_iter()
        .find(|&(a, b)| !codomain.leq(assignment[a], assignment[b]))
}

pub(crate) fn check_assignment(
    domain: &FiniteSpace,
    codomain: &FiniteSpace,
    assignment: &[usize],
) -> Result<(), MapError> {
    if assignment.len() != domain.len() {
        return Err(MapError::WrongLength {
            expected: domain.len(),
            got: assignment.len(),
        });
    }
    if let Some(&bad) = assignment.iter().find(|&&p| p >= codomain.len()) {
        return Err(MapError::OutOfRange(bad));
    }
    if let Some((a, b)) = monotonicity_violation(domain, codomain, assignment) {
        return Err(MapError::NotMonotone {
            below: domain.label(a).to_string(),
            above: domain.label(b).to_string(),
        });
    }
    Ok(())
}

/// An order-preserving (equivalently, continuous) map between finite spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuousMap {
    domain: Arc<FiniteSpace>,
    codomain: Arc<FiniteSpace>,
    assignment: Vec<usize>,
}

impl ContinuousMap {
    pub fn new(
        domain: Arc<FiniteSpace>,
        codomain: Arc<FiniteSpace>,
        assignment: Vec<usize>,
    ) -> Result<Self, MapError> {
        check_assignment(&domain, &codomain, &assignment)?;
        Ok(Self {
            domain,
            codomain,
            assignment,
        })
    }

    pub(crate) fn new_unchecked(
        domain: Arc<FiniteSpace>,
        codomain: Arc<FiniteSpace>,
        assignment: Vec<usize>,
    ) -> Self {
        debug_assert!(check_assignment(&domain, &codomain, &assignment).is_ok());
        Self {
            domain,
            codomain,
            assignment,
        }
    }

    pub fn identity(space: Arc<FiniteSpace>) -> Self {
        let assignment = (0..space.len()).collect();
        Self::new_unchecked(space.clone(), space, assignment)
    }

    pub fn constant(domain: Arc<FiniteSpace>, codomain: Arc<FiniteSpace>, point: usize) -> Self {
        assert!(point < codomain.len());
        let assignment = vec![point; domain.len()];
        Self::new_unchecked(domain, codomain, assignment)
    }

    /// Inclusion of the open (or any) subset `set` of `space`, with the
    /// induced subspace as domain.
    pub fn inclusion(space: &Arc<FiniteSpace>, set: &PointSet) -> Self {
        let (sub, embedding) = space.subspace(set);
        Self::new_unchecked(Arc::new(sub), space.clone(), embedding)
    }

    pub fn domain(&self) -> &Arc<FiniteSpace> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteSpace> {
        &self.codomain
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn into_assignment(self) -> Vec<usize> {
        self.assignment
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.assignment[point]
    }

    pub fn is_constant(&self) -> bool {
        self.assignment.windows(2).all(|w| w[0] == w[1])
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &ContinuousMap) -> Result<ContinuousMap, MapError> {
        if *self.codomain != *then.domain {
            return Err(MapError::Incompatible);
        }
        let assignment = self.assignment.iter().map(|&p| then.assignment[p]).collect();
        Ok(Self::new_unchecked(
            self.domain.clone(),
            then.codomain.clone(),
            assignment,
        ))
    }

    /// Restriction to the subspace on `set`.
    pub fn restrict(&self, set: &PointSet) -> ContinuousMap {
        let (sub, embedding) = self.domain.subspace(set);
        let assignment = embedding.iter().map(|&p| self.assignment[p]).collect();
        Self::new_unchecked(Arc::new(sub), self.codomain.clone(), assignment)
    }

    /// `self ≤ other` at every point.
    pub fn pointwise_le(&self, other: &ContinuousMap) -> bool {
        self.assignment
            .iter()
            .zip(&other.assignment)
            .all(|(&a, &b)| self.codomain.leq(a, b))
    }
}
