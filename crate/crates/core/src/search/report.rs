use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::homotopy::Fence;
use crate::space::{FiniteSpace, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Invariant {
    Cat,
    Tc,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::Cat => "cat",
            Invariant::Tc => "tc",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// The covering is optimal: every assignment with one block fewer was
    /// refuted.
    Proven,
    /// Some refutation at the next level down was inconclusive.
    UpperBoundOnly,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Proven => "proven",
            Status::UpperBoundOnly => "upper-bound-only",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    /// The witness block contains a full fiber over a non-contractible
    /// factor.
    RowColumn,
    /// The homotopy engine enumerated the whole component without success.
    HomPosetExhaustion,
    /// A limit was hit before the witness block was decided.
    Inconclusive,
}

/// An open covering of the search target with one witness fence per block.
///
/// For `cat` a witness runs from the inclusion of the block to a constant
/// map; for `tc` it runs from `pr₁` to `pr₂` restricted to the block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covering {
    pub target: Arc<FiniteSpace>,
    pub blocks: Vec<PointSet>,
    pub witnesses: Vec<Fence>,
}

/// Every assignment extending `prefix` is refuted: the maximal points
/// `witness` (indices into the report's maximal list) all sit in one block of
/// the prefix and that set is already bad.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    pub prefix: Vec<usize>,
    pub witness: Vec<usize>,
    pub reason: Reason,
    /// Number of full assignments extending `prefix`.
    pub count: u128,
}

/// Exhaustion record for assignments into `blocks` blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerRecord {
    pub blocks: usize,
    pub assignments: u128,
    pub refuted: Vec<Refutation>,
}

impl LowerRecord {
    pub fn is_complete(&self) -> bool {
        self.refuted.iter().all(|r| r.reason != Reason::Inconclusive)
    }

    /// Number of assignments refuted for `reason`.
    pub fn count_for(&self, reason: Reason) -> u128 {
        self.refuted
            .iter()
            .filter(|r| r.reason == reason)
            .map(|r| r.count)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub invariant: Invariant,
    /// The input space `X`; the search target is `X` for cat and `X × X`
    /// for tc.
    pub space: Arc<FiniteSpace>,
    pub value: usize,
    pub status: Status,
    /// Maximal points of the target, as target indices.
    pub maximal: Vec<usize>,
    pub covering: Covering,
    /// Absent when `value = 1`.
    pub lower: Option<LowerRecord>,
}
