use serde::Serialize;

use crate::homotopy::is_contractible;
use crate::space::FiniteSpace;

/// Upper bounds available without any search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub maximal: usize,
    pub contractible: bool,
    /// `cat(X) ≤ #maximal`.
    pub cat_upper: usize,
    /// `cat(X × X) ≤ cat(X)²`.
    pub cat_square_upper: usize,
    /// `TC(X) ≤ cat(X × X)`.
    pub tc_upper: usize,
    /// The zero-divisor cup-length bound is not computed.
    pub zcl_lower: Option<usize>,
}

impl BoundsReport {
    /// Tightens the bounds with a known (upper bound on) `cat(X)`.
    pub fn with_cat(mut self, cat: usize) -> Self {
        self.cat_upper = self.cat_upper.min(cat);
        self.cat_square_upper = self.cat_square_upper.min(cat * cat);
        self.tc_upper = self.tc_upper.min(self.cat_square_upper);
        self
    }
}

pub fn known_bounds(space: &FiniteSpace) -> BoundsReport {
    let maximal = space.maximal_points().len();
    let contractible = is_contractible(space);
    let cat_upper = if contractible { 1 } else { maximal };
    BoundsReport {
        maximal,
        contractible,
        cat_upper,
        cat_square_upper: cat_upper * cat_upper,
        tc_upper: cat_upper * cat_upper,
        zcl_lower: None,
    }
}
