//! Finite T0 spaces as partial orders.
//!
//! A finite T0 space is the same thing as a finite poset: the open sets are
//! exactly the down-closed subsets, the minimal open neighbourhood of `x` is
//! its downset `x↓ = {y : y ≤ x}`, and continuous maps are order-preserving
//! maps. Everything in this crate works on that order-theoretic description.

mod constructors;
mod iso;
mod kind;
mod pointset;
mod validate;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use constructors::{
    circle_model, discrete, interval_model, nh_join, nh_suspension, opposite, point, product,
    sphere_model, wedge,
};
pub use iso::find_isomorphism;
pub use kind::{KindParseError, SpaceKind};
pub use pointset::PointSet;
pub use validate::{validate, RawSpace, ValidationReport, Violation};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SpaceError {
    #[error("unknown point label `{0}`")]
    UnknownPoint(String),
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("relation is not antisymmetric (not T0): `{0}` ≤ `{1}` and `{1}` ≤ `{0}`")]
    NotAntisymmetric(String, String),
    #[error("{constructor}: parameter {value} is below the minimum {min}")]
    ParameterTooSmall {
        constructor: &'static str,
        value: usize,
        min: usize,
    },
    #[error("wedge basepoint `{0}` is neither maximal nor minimal")]
    BasepointNotExtremal(String),
    #[error("wedge basepoints must be all maximal or all minimal")]
    MixedBasepoints,
    #[error("wedge needs one basepoint per space ({spaces} spaces, {basepoints} basepoints)")]
    WedgeArity { spaces: usize, basepoints: usize },
    #[error("space has no points")]
    Empty,
}

/// A finite T0 topological space, stored as a partial order on labelled
/// points.
///
/// The order is kept twice: as the closed comparability matrix (one downset
/// and one upset bitset per point) used by all queries, and as the Hasse
/// diagram (cover relations) used for serialization and local moves.
/// Instances are immutable once built.
#[derive(Clone)]
pub struct FiniteSpace {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    below: Vec<PointSet>,
    above: Vec<PointSet>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
    kind: SpaceKind,
}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSpace")
            .field("kind", &self.kind.to_string())
            .field("points", &self.labels)
            .field("hasse", &self.hasse_edges())
            .finish()
    }
}

/// Two spaces are equal when they have the same labels in the same order and
/// the same order relation. Provenance is ignored.
impl PartialEq for FiniteSpace {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.below == other.below
    }
}

impl Eq for FiniteSpace {}

impl FiniteSpace {
    /// Builds a space from labels and a generating set of `below ≤ above`
    /// pairs. The reflexive-transitive closure is taken; cycles are rejected.
    pub fn from_relation(
        labels: Vec<String>,
        relation: &[(usize, usize)],
        kind: SpaceKind,
    ) -> Result<Self, SpaceError> {
        let n = labels.len();
        let mut below: Vec<PointSet> = (0..n).map(|i| PointSet::singleton(n, i)).collect();
        for &(a, b) in relation {
            assert!(a < n && b < n, "relation index out of range");
            below[b].insert(a);
        }
        // Warshall closure on downsets.
        for k in 0..n {
            let row_k = below[k].clone();
            for row in below.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for a in 0..n {
            for b in below[a].iter() {
                if b != a && below[b].contains(a) {
                    let (lo, hi) = if b < a { (b, a) } else { (a, b) };
                    return Err(SpaceError::NotAntisymmetric(
                        labels[lo].clone(),
                        labels[hi].clone(),
                    ));
                }
            }
        }
        Self::from_closed(labels, below, kind)
    }

    /// Builds a space from already closed downsets.
    fn from_closed(
        labels: Vec<String>,
        below: Vec<PointSet>,
        kind: SpaceKind,
    ) -> Result<Self, SpaceError> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(SpaceError::DuplicateLabel(l.clone()));
            }
        }
        let mut above: Vec<PointSet> = (0..n).map(|_| PointSet::empty(n)).collect();
        for (b, row) in below.iter().enumerate() {
            for a in row.iter() {
                above[a].insert(b);
            }
        }
        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for x in 0..n {
            let mut strict = below[x].clone();
            strict.remove(x);
            for a in strict.iter() {
                // a is a lower cover of x iff nothing in strict sits above a.
                if above[a].intersection_count(&strict) == 1 {
                    lower_covers[x].push(a);
                    upper_covers[a].push(x);
                }
            }
        }
        Ok(Self {
            labels,
            index,
            below,
            above,
            lower_covers,
            upper_covers,
            kind,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, point: usize) -> &str {
        &self.labels[point]
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    pub fn with_kind(mut self, kind: SpaceKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn point(&self, label: &str) -> Result<usize, SpaceError> {
        self.index_of(label)
            .ok_or_else(|| SpaceError::UnknownPoint(label.to_string()))
    }

    /// `a ≤ b` in the specialization order.
    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    /// `a` and `b` are comparable.
    #[inline]
    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Minimal open neighbourhood `x↓`.
    pub fn down(&self, x: usize) -> &PointSet {
        &self.below[x]
    }

    /// Closure `x↑`.
    pub fn up(&self, x: usize) -> &PointSet {
        &self.above[x]
    }

    pub fn downset(&self, label: &str) -> Result<PointSet, SpaceError> {
        Ok(self.below[self.point(label)?].clone())
    }

    pub fn upset(&self, label: &str) -> Result<PointSet, SpaceError> {
        Ok(self.above[self.point(label)?].clone())
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    /// Cover relations `(below, above)`, sorted.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|x| self.upper_covers[x].iter().map(move |&y| (x, y)))
            .collect();
        edges.sort_unstable();
        edges
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.len())
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::full(self.len())
    }

    /// Builds a point set from labels.
    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<PointSet, SpaceError> {
        let mut set = self.empty_set();
        for l in labels {
            set.insert(self.point(l.as_ref())?);
        }
        Ok(set)
    }

    pub fn set_labels(&self, set: &PointSet) -> Vec<String> {
        set.iter().map(|p| self.labels[p].clone()).collect()
    }

    pub fn is_maximal(&self, x: usize) -> bool {
        self.upper_covers[x].is_empty()
    }

    pub fn is_minimal(&self, x: usize) -> bool {
        self.lower_covers[x].is_empty()
    }

    pub fn maximal_points(&self) -> PointSet {
        PointSet::from_indices(self.len(), (0..self.len()).filter(|&x| self.is_maximal(x)))
    }

    pub fn minimal_points(&self) -> PointSet {
        PointSet::from_indices(self.len(), (0..self.len()).filter(|&x| self.is_minimal(x)))
    }

    /// Open sets are the down-closed sets.
    pub fn is_open(&self, set: &PointSet) -> bool {
        set.iter().all(|x| self.below[x].is_subset(set))
    }

    pub fn is_closed(&self, set: &PointSet) -> bool {
        set.iter().all(|x| self.above[x].is_subset(set))
    }

    /// Smallest open set containing `set`.
    pub fn down_closure(&self, set: &PointSet) -> PointSet {
        let mut out = self.empty_set();
        for x in set.iter() {
            out.union_with(&self.below[x]);
        }
        out
    }

    /// Smallest closed set containing `set`.
    pub fn up_closure(&self, set: &PointSet) -> PointSet {
        let mut out = self.empty_set();
        for x in set.iter() {
            out.union_with(&self.above[x]);
        }
        out
    }

    /// Connectivity of the subspace `set`: its comparability graph has exactly
    /// one component. The empty set is not connected.
    pub fn is_connected(&self, set: &PointSet) -> bool {
        self.components(set).len() == 1
    }

    pub fn is_connected_space(&self) -> bool {
        self.is_connected(&self.full_set())
    }

    /// Connected components of the subspace `set`, ordered by least member.
    pub fn components(&self, set: &PointSet) -> Vec<PointSet> {
        let mut seen = self.empty_set();
        let mut out = Vec::new();
        for start in set.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = PointSet::singleton(self.len(), start);
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(x) = stack.pop() {
                let mut nbrs = self.below[x].union(&self.above[x]);
                nbrs.intersect_with(set);
                for y in nbrs.iter() {
                    if !seen.contains(y) {
                        seen.insert(y);
                        comp.insert(y);
                        stack.push(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Length of the longest chain ending at each point (minimal points have
    /// height 0).
    pub fn heights(&self) -> Vec<usize> {
        let mut height = vec![usize::MAX; self.len()];
        fn visit(space: &FiniteSpace, x: usize, height: &mut [usize]) -> usize {
            if height[x] != usize::MAX {
                return height[x];
            }
            let h = space.lower_covers[x]
                .iter()
                .map(|&y| visit(space, y, height) + 1)
                .max()
                .unwrap_or(0);
            height[x] = h;
            h
        }
        for x in 0..self.len() {
            visit(self, x, &mut height);
        }
        height
    }

    /// A linear extension: points sorted by height, ties by index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let heights = self.heights();
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (heights[x], x));
        order
    }

    /// Induced subspace on `set`. Returns the subspace (labels kept, in index
    /// order) and its embedding into `self`.
    pub fn subspace(&self, set: &PointSet) -> (FiniteSpace, Vec<usize>) {
        let embedding = set.to_vec();
        let m = embedding.len();
        let mut position = vec![usize::MAX; self.len()];
        for (i, &p) in embedding.iter().enumerate() {
            position[p] = i;
        }
        let below = embedding
            .iter()
            .map(|&p| {
                PointSet::from_indices(
                    m,
                    self.below[p].intersection(set).iter().map(|q| position[q]),
                )
            })
            .collect();
        let labels = embedding.iter().map(|&p| self.labels[p].clone()).collect();
        let sub = Self::from_closed(labels, below, SpaceKind::Explicit)
            .expect("labels of a valid space are unique");
        (sub, embedding)
    }

    /// Order relation as a list of all pairs `a ≤ b`, including reflexive ones.
    pub fn relation_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|b| self.below[b].iter().map(move |a| (a, b)))
            .collect()
    }
}
