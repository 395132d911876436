//! Independent checking of saved artifacts: search reports, exploration
//! reports, fences and spaces.
//!
//! The checks here rebuild everything they need from the artifact itself and
//! share no code with the search beyond the space constructors, the fence
//! checker and (with `recheck_exhaustion`) the homotopy engine. Exhaustion
//! claims are otherwise taken on trust; every other claim is verified.

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::Value;
use thiserror::Error;

use super::json::{ExplorationJson, FenceJson, OutcomeJson, ReportJson, SpaceJson};
use crate::homotopy::{
    is_contractible, is_nullhomotopic_inclusion, Decision, Fence, Limits, SquareSpace,
};
use crate::search::{Invariant, Reason, Status};
use crate::space::{circle_model, product, FiniteSpace, PointSet, SpaceKind};

#[derive(Debug, Error)]
pub enum CertifyError {
    /// The document is not any known artifact.
    #[error("malformed artifact: {0}")]
    Schema(String),
    /// The artifact parses but one of its claims is false.
    #[error("certificate rejected: {0}")]
    Rejected(String),
}

#[derive(Debug, Clone, Default)]
pub struct CertifyOptions {
    /// Re-decide every hom-poset exhaustion claim with the homotopy engine.
    pub recheck_exhaustion: bool,
    pub limits: Limits,
}

/// What a successful check established.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certified {
    Report {
        invariant: Invariant,
        value: usize,
        status: Status,
    },
    Exploration {
        n: usize,
        covers: bool,
        certificates: usize,
    },
    Fence {
        steps: usize,
    },
    Space {
        points: usize,
    },
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(CertifyError::Rejected(format!($($arg)+)));
        }
    };
}

fn reject(msg: impl std::fmt::Display) -> CertifyError {
    CertifyError::Rejected(msg.to_string())
}

/// Checks any artifact, telling the kinds apart by their top-level fields.
pub fn certify(text: &str, options: &CertifyOptions) -> Result<Certified, CertifyError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| CertifyError::Schema(e.to_string()))?;
    let has = |key: &str| value.get(key).is_some();
    let schema = |e: serde_json::Error| CertifyError::Schema(e.to_string());
    if has("invariant") {
        let report: ReportJson = serde_json::from_value(value).map_err(schema)?;
        certify_report(&report, options)
    } else if has("antipode_shift") {
        let report: ExplorationJson = serde_json::from_value(value).map_err(schema)?;
        certify_exploration(&report, options)
    } else if has("maps") {
        let fence: FenceJson = serde_json::from_value(value).map_err(schema)?;
        let fence = fence.to_fence().map_err(reject)?;
        Ok(Certified::Fence { steps: fence.len() })
    } else if has("points") {
        let space: SpaceJson = serde_json::from_value(value).map_err(schema)?;
        let space = space.to_space().map_err(reject)?;
        Ok(Certified::Space {
            points: space.len(),
        })
    } else {
        Err(CertifyError::Schema(
            "expected a report, exploration, fence or space".into(),
        ))
    }
}

/// The fiber obstruction, computed from scratch: a block of `A × B` is
/// obstructed when it contains a whole fiber `A × {b}` with `A` not
/// contractible, or `{a} × B` with `B` not contractible.
#[derive(Debug, Clone, Copy)]
struct Obstruction {
    left: usize,
    right: usize,
    left_contractible: bool,
    right_contractible: bool,
}

impl Obstruction {
    fn square(base: &FiniteSpace) -> Self {
        let c = is_contractible(base);
        Self {
            left: base.len(),
            right: base.len(),
            left_contractible: c,
            right_contractible: c,
        }
    }

    /// Only products whose recorded factors rebuild to the space itself.
    fn product(space: &FiniteSpace) -> Option<Self> {
        let SpaceKind::Product(a, b) = space.kind() else {
            return None;
        };
        let a = a.rebuild()?.ok()?;
        let b = b.rebuild()?.ok()?;
        if product(&a, &b) != *space {
            return None;
        }
        Some(Self {
            left: a.len(),
            right: b.len(),
            left_contractible: is_contractible(&a),
            right_contractible: is_contractible(&b),
        })
    }

    fn holds(&self, set: &PointSet) -> bool {
        let row = |a: usize| (0..self.right).all(|b| set.contains(a * self.right + b));
        let column = |b: usize| (0..self.left).all(|a| set.contains(a * self.right + b));
        (!self.right_contractible && (0..self.left).any(row))
            || (!self.left_contractible && (0..self.right).any(column))
    }
}

fn label_set(space: &FiniteSpace, labels: &[String], what: &str) -> Result<PointSet, CertifyError> {
    let mut set = space.empty_set();
    for l in labels {
        let p = space
            .index_of(l)
            .ok_or_else(|| reject(format!("{what}: unknown point {l:?}")))?;
        ensure!(!set.contains(p), "{what}: point {l:?} listed twice");
        set.insert(p);
    }
    Ok(set)
}

/// Number of ways to finish a restricted growth string of length `len`
/// whose first `prefix` entries use `used` of `k` values. `None` when the
/// count does not fit in `u128`.
fn completions(len: usize, k: usize, prefix: usize, used: usize) -> Option<u128> {
    // ways[u] = completions of the remaining suffix when u values are in
    // use. Unreachable states may saturate without affecting the answer.
    let mut ways: Vec<u128> = (0..=k).map(|u| u128::from(u == k)).collect();
    for _ in prefix..len {
        let mut next = vec![0u128; k + 1];
        for u in 0..=k {
            let grow = if u < k { ways[u + 1] } else { 0 };
            next[u] = (u as u128).saturating_mul(ways[u]).saturating_add(grow);
        }
        ways = next;
    }
    ways.get(used).copied().filter(|&c| c < u128::MAX)
}

pub fn certify_report(r: &ReportJson, options: &CertifyOptions) -> Result<Certified, CertifyError> {
    let x = r.space.to_space().map_err(|e| reject(format!("space: {e}")))?;
    ensure!(
        !x.is_empty() && x.is_connected_space(),
        "space: must be nonempty and connected"
    );
    let x = Arc::new(x);
    let target = match r.invariant {
        Invariant::Cat => x.clone(),
        Invariant::Tc => Arc::new(product(&x, &x)),
    };
    let maximal: Vec<usize> = target.maximal_points().to_vec();
    let maximal_labels: Vec<&str> = maximal.iter().map(|&m| target.label(m)).collect();
    ensure!(
        r.maximal.iter().map(String::as_str).eq(maximal_labels.iter().copied()),
        "maximal: does not list the maximal points of the target in order"
    );

    ensure!(r.value >= 1, "value: must be at least 1");
    ensure!(
        r.covering.blocks.len() == r.value,
        "covering: {} blocks for value {}",
        r.covering.blocks.len(),
        r.value
    );
    ensure!(
        r.covering.witnesses.len() == r.value,
        "covering: {} witnesses for value {}",
        r.covering.witnesses.len(),
        r.value
    );
    let mut union = target.empty_set();
    for (i, (labels, w)) in r.covering.blocks.iter().zip(&r.covering.witnesses).enumerate() {
        let block = label_set(&target, labels, &format!("block {i}"))?;
        ensure!(!block.is_empty(), "block {i}: empty");
        ensure!(target.is_open(&block), "block {i}: not open");
        union.union_with(&block);
        let fence = w.to_fence().map_err(|e| reject(format!("witness {i}: {e}")))?;
        check_witness(r.invariant, &x, &target, &block, &fence)
            .map_err(|e| reject(format!("witness {i}: {e}")))?;
    }
    ensure!(union.is_full(), "covering: blocks do not cover the target");

    let inconclusive = match (&r.lower, r.value) {
        (None, 1) => false,
        (None, _) => return Err(reject("lower: missing for value above 1")),
        (Some(_), 1) => return Err(reject("lower: present for value 1")),
        (Some(lower), value) => {
            ensure!(
                lower.blocks == value - 1,
                "lower: record is for {} blocks, expected {}",
                lower.blocks,
                value - 1
            );
            let obstruction = match r.invariant {
                Invariant::Tc => Some(Obstruction::square(&x)),
                Invariant::Cat => Obstruction::product(&x),
            };
            let checker = LowerCheck {
                invariant: r.invariant,
                x: &x,
                target: &target,
                maximal: &maximal,
                obstruction,
                options,
            };
            checker.check(lower)?
        }
    };
    let expected = if inconclusive {
        Status::UpperBoundOnly
    } else {
        Status::Proven
    };
    ensure!(
        r.status == expected,
        "status: is {:?} but the lower record makes it {:?}",
        r.status,
        expected
    );
    Ok(Certified::Report {
        invariant: r.invariant,
        value: r.value,
        status: r.status,
    })
}

/// A witness for `block` must be a fence on the subspace `block` from `pr₁`
/// to `pr₂` (tc) or from the inclusion to a constant map (cat).
fn check_witness(
    invariant: Invariant,
    x: &Arc<FiniteSpace>,
    target: &Arc<FiniteSpace>,
    block: &PointSet,
    fence: &Fence,
) -> Result<(), String> {
    let (sub, embedding) = target.subspace(block);
    if **fence.domain() != sub {
        return Err("domain is not the subspace on the block".into());
    }
    let first = fence.maps().first().ok_or("no maps")?;
    let last = fence.maps().last().ok_or("no maps")?;
    match invariant {
        Invariant::Tc => {
            let n = x.len();
            if **fence.codomain() != **x {
                return Err("codomain is not the space".into());
            }
            if !first.iter().zip(&embedding).all(|(&f, &q)| f == q / n) {
                return Err("does not start at the first projection".into());
            }
            if !last.iter().zip(&embedding).all(|(&g, &q)| g == q % n) {
                return Err("does not end at the second projection".into());
            }
        }
        Invariant::Cat => {
            if **fence.codomain() != **target {
                return Err("codomain is not the space".into());
            }
            if *first != embedding {
                return Err("does not start at the inclusion".into());
            }
            if last.windows(2).any(|w| w[0] != w[1]) {
                return Err("does not end at a constant map".into());
            }
        }
    }
    Ok(())
}

struct LowerCheck<'a> {
    invariant: Invariant,
    x: &'a Arc<FiniteSpace>,
    target: &'a Arc<FiniteSpace>,
    maximal: &'a [usize],
    obstruction: Option<Obstruction>,
    options: &'a CertifyOptions,
}

impl LowerCheck<'_> {
    /// Returns whether any entry is inconclusive.
    fn check(&self, lower: &super::json::LowerJson) -> Result<bool, CertifyError> {
        let m = self.maximal.len();
        let k = lower.blocks;
        let total = completions(m, k, 0, 0).ok_or_else(|| reject("lower: count overflow"))?;
        ensure!(
            lower.assignments == total,
            "lower: {} assignments claimed, there are {total}",
            lower.assignments
        );
        let index: HashMap<&str, usize> = self
            .maximal
            .iter()
            .enumerate()
            .map(|(i, &p)| (self.target.label(p), i))
            .collect();
        let mut sum: u128 = 0;
        let mut inconclusive = false;
        for (i, e) in lower.refuted.iter().enumerate() {
            let at = |msg: String| reject(format!("lower entry {i}: {msg}"));
            let p = &e.prefix;
            ensure!(!p.is_empty() && p.len() <= m, "lower entry {i}: bad prefix length");
            let mut used = 0;
            for &v in p {
                ensure!(
                    v <= used && v < k,
                    "lower entry {i}: prefix is not a restricted growth string"
                );
                used = used.max(v + 1);
            }
            let count = completions(m, k, p.len(), used).ok_or_else(|| at("count overflow".into()))?;
            ensure!(
                e.count == count && count > 0,
                "lower entry {i}: count {} but the prefix has {count} completions",
                e.count
            );
            sum = sum.checked_add(count).ok_or_else(|| at("count overflow".into()))?;

            ensure!(!e.witness.is_empty(), "lower entry {i}: empty witness");
            let mut members = Vec::new();
            for l in &e.witness {
                let j = *index
                    .get(l.as_str())
                    .ok_or_else(|| at(format!("{l:?} is not a maximal point")))?;
                ensure!(!members.contains(&j), "lower entry {i}: {l:?} listed twice");
                ensure!(j < p.len(), "lower entry {i}: {l:?} lies beyond the prefix");
                members.push(j);
            }
            ensure!(
                members.iter().all(|&j| p[j] == p[members[0]]),
                "lower entry {i}: witness points lie in different blocks"
            );
            let mut set = self.target.empty_set();
            for &j in &members {
                set.union_with(self.target.down(self.maximal[j]));
            }
            let obstructed = self.obstruction.is_some_and(|o| o.holds(&set));
            match e.reason {
                Reason::RowColumn => {
                    ensure!(obstructed, "lower entry {i}: witness is not obstructed");
                }
                Reason::HomPosetExhaustion => {
                    ensure!(
                        !obstructed,
                        "lower entry {i}: obstructed witness marked as exhaustion"
                    );
                    if self.options.recheck_exhaustion {
                        self.recheck(&set).map_err(at)?;
                    }
                }
                Reason::Inconclusive => {
                    ensure!(
                        !obstructed,
                        "lower entry {i}: obstructed witness marked inconclusive"
                    );
                    inconclusive = true;
                }
            }
        }
        let mut prefixes: Vec<&Vec<usize>> = lower.refuted.iter().map(|e| &e.prefix).collect();
        prefixes.sort();
        for w in prefixes.windows(2) {
            ensure!(
                !w[1].starts_with(w[0]),
                "lower: prefix {:?} overlaps prefix {:?}",
                w[0],
                w[1]
            );
        }
        ensure!(
            sum == total,
            "lower: entries account for {sum} of {total} assignments"
        );
        Ok(inconclusive)
    }

    fn recheck(&self, set: &PointSet) -> Result<(), String> {
        let budget = self.options.limits.start();
        let decision = match self.invariant {
            Invariant::Tc => SquareSpace::new(self.x.clone())
                .admits_planner(set, &budget)
                .map(|d| d.map(|_| ())),
            Invariant::Cat => {
                is_nullhomotopic_inclusion(set, self.target, &budget).map(|d| d.map(|_| ()))
            }
        }
        .map_err(|e| e.to_string())?;
        match decision {
            Decision::Refuted { .. } => Ok(()),
            Decision::Found(()) => Err("witness block is good after all".into()),
            Decision::Inconclusive { .. } => Err("exhaustion could not be rechecked within limits".into()),
        }
    }
}

pub fn certify_exploration(
    r: &ExplorationJson,
    options: &CertifyOptions,
) -> Result<Certified, CertifyError> {
    let n = r.n;
    let x = circle_model(n).map_err(|e| reject(format!("n: {e}")))?;
    let given = r.space.to_space().map_err(|e| reject(format!("space: {e}")))?;
    ensure!(
        given == x && given.labels() == x.labels(),
        "space: is not the circle model on {n} pairs"
    );
    ensure!(
        r.antipode_shift == n / 2,
        "antipode_shift: {} instead of {}",
        r.antipode_shift,
        n / 2
    );
    let x = Arc::new(x);
    let square = SquareSpace::new(x.clone());
    let target = square.square();
    let len = x.len();
    let mut anti = target.empty_set();
    for p in 0..len {
        let q = (p / n) * n + (p % n + n / 2) % n;
        anti.insert(p * len + q);
    }
    let d = target.up_closure(&anti);
    let expected = [("Q1", d.complement()), ("Q2", target.down_closure(&d))];
    ensure!(r.sets.len() == 2, "sets: expected Q1 and Q2");
    let obstruction = Obstruction::square(&x);
    let mut union = target.empty_set();
    let mut certificates = 0;
    for (s, (name, points)) in r.sets.iter().zip(&expected) {
        ensure!(s.name == *name, "sets: expected {name}, found {}", s.name);
        let given = label_set(target, &s.points, name)?;
        ensure!(given == *points, "{name}: points differ from the recomputed set");
        union.union_with(points);
        ensure!(
            s.open == target.is_open(points),
            "{name}: open flag is wrong"
        );
        ensure!(
            s.obstructed == obstruction.holds(points),
            "{name}: obstructed flag is wrong"
        );
        match &s.outcome {
            OutcomeJson::Certificate { fence } => {
                ensure!(s.open, "{name}: certificate for a set that is not open");
                let fence = fence.to_fence().map_err(|e| reject(format!("{name}: {e}")))?;
                check_witness(Invariant::Tc, &x, target, points, &fence)
                    .map_err(|e| reject(format!("{name}: {e}")))?;
                certificates += 1;
            }
            OutcomeJson::Refutation { .. } => {
                if options.recheck_exhaustion {
                    let budget = options.limits.start();
                    let decision = square
                        .admits_planner(points, &budget)
                        .map_err(|e| reject(format!("{name}: {e}")))?;
                    ensure!(
                        decision.is_refuted(),
                        "{name}: refutation not confirmed on recheck"
                    );
                }
            }
            OutcomeJson::Inconclusive { .. } => {}
        }
    }
    ensure!(r.covers == union.is_full(), "covers: flag is wrong");
    Ok(Certified::Exploration {
        n,
        covers: r.covers,
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn completions_match_stirling_numbers() {
        assert_eq!(completions(4, 2, 0, 0), Some(7));
        assert_eq!(completions(9, 2, 0, 0), Some(255));
        assert_eq!(completions(16, 3, 0, 0), Some(7_141_686));
        // Prefix [0, 1] of length 4 with 2 blocks: 2 · 2 completions.
        assert_eq!(completions(4, 2, 2, 2), Some(4));
        assert_eq!(completions(3, 2, 3, 1), Some(0));
    }

    #[test]
    fn obstruction_on_circle_square() {
        let x = circle_model(2).unwrap();
        let o = Obstruction::square(&x);
        let sq = product(&x, &x);
        assert!(o.holds(&sq.full_set()));
        assert!(!o.holds(&sq.down(sq.maximal_points().first().unwrap()).clone()));
        assert!(Obstruction::product(&sq).is_some());
        assert!(Obstruction::product(&x).is_none());
    }
}
