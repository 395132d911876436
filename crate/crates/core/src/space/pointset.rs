use fixedbitset::FixedBitSet;

/// A subset of the points of some [`FiniteSpace`](super::FiniteSpace),
/// stored as a bitset over point indices.
///
/// The universe size is fixed at construction and must match the space the
/// set is used with.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    bits: FixedBitSet,
}

impl PointSet {
    pub fn empty(universe: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        Self { bits }
    }

    pub fn singleton(universe: usize, point: usize) -> Self {
        let mut set = Self::empty(universe);
        set.insert(point);
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, points: I) -> Self {
        let mut set = Self::empty(universe);
        for p in points {
            set.insert(p);
        }
        set
    }

    /// Number of points in the ambient space.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe()
    }

    pub fn contains(&self, point: usize) -> bool {
        self.bits.contains(point)
    }

    pub fn insert(&mut self, point: usize) {
        self.bits.insert(point);
    }

    pub fn remove(&mut self, point: usize) {
        self.bits.set(point, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn union_with(&mut self, other: &PointSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &PointSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &PointSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    /// Complement within the universe.
    pub fn complement(&self) -> PointSet {
        let mut out = self.clone();
        out.bits.toggle_range(..);
        out
    }

    /// Number of points shared with `other`.
    pub fn intersection_count(&self, other: &PointSet) -> usize {
        self.bits.intersection_count(&other.bits)
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.minimum()
    }
}
