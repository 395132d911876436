//! Exact `cat` and `TC` by covering search.
//!
//! Every open cover can be shrunk to one whose blocks are unions of downsets
//! of maximal points (goodness passes to open subsets), so it suffices to
//! search assignments of maximal points to `k` unordered blocks. Starting
//! from a covering built directly, `k` is lowered one step at a time until
//! some level has no good assignment; the refutations at that level form the
//! lower-bound record.

mod bounds;
mod explore;
mod interval;
mod oracle;
mod product;
mod report;
mod rgs;

use std::sync::Arc;

use thiserror::Error;

pub use bounds::{known_bounds, BoundsReport};
pub use explore::{
    antipode, explore_antidiagonal_cover, ExplorationReport, ExploredSet, Outcome,
};
pub use interval::{interval_map_to_fence, planner_to_interval_map, IntervalMapError};
pub use product::{
    downset_covering, pair_downset_covering, planner_covering, product_covering,
};
pub use report::{Covering, Invariant, LowerRecord, Reason, Refutation, SearchReport, Status};
pub use rgs::{enumerate_block_assignments, stirling2, BlockAssignments, Completions};

use crate::homotopy::{Limits, SquareSpace};
use crate::space::FiniteSpace;
use oracle::{product_factors, BlockOracle, Verdict};

/// Largest number of maximal points of the search target.
pub const MAX_MAXIMAL: usize = 64;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("space is empty")]
    Empty,
    #[error("space is not connected")]
    Disconnected,
    #[error("search target has {0} maximal points; at most {MAX_MAXIMAL} are supported")]
    TooManyMaximal(usize),
    #[error("number of block assignments overflows")]
    CountOverflow,
}

/// Result of deciding one assignment of maximal points to blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefutationResult {
    /// Every block is good.
    Feasible,
    /// Block `block` contains the bad set `witness` (indices into the
    /// maximal list).
    Refuted {
        block: usize,
        witness: Vec<usize>,
        reason: Reason,
    },
    Inconclusive { block: usize },
}

fn mask_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Assignments of maximal points to blocks for one invariant of one space,
/// with the goodness caches shared across all decisions.
#[derive(Debug)]
pub struct Searcher {
    space: Arc<FiniteSpace>,
    oracle: BlockOracle,
    limits: Limits,
}

impl Searcher {
    pub fn new(
        invariant: Invariant,
        space: Arc<FiniteSpace>,
        limits: &Limits,
    ) -> Result<Self, SearchError> {
        if space.is_empty() {
            return Err(SearchError::Empty);
        }
        if !space.is_connected_space() {
            return Err(SearchError::Disconnected);
        }
        let oracle = BlockOracle::new(invariant, &space, limits);
        if oracle.maximal().len() > MAX_MAXIMAL {
            return Err(SearchError::TooManyMaximal(oracle.maximal().len()));
        }
        Ok(Self {
            space,
            oracle,
            limits: *limits,
        })
    }

    pub fn target(&self) -> &Arc<FiniteSpace> {
        self.oracle.target()
    }

    /// Maximal points of the target, in index order.
    pub fn maximal(&self) -> &[usize] {
        self.oracle.maximal()
    }

    fn masks_of(&self, assignment: &[usize], blocks: usize) -> Vec<u64> {
        let mut masks = vec![0u64; blocks];
        for (i, &b) in assignment.iter().enumerate() {
            masks[b] |= 1 << i;
        }
        masks
    }

    /// Decides a single assignment, block by block: a bad block refutes it
    /// even when an earlier block was inconclusive.
    pub fn refute_assignment(&mut self, assignment: &[usize]) -> RefutationResult {
        assert_eq!(assignment.len(), self.maximal().len());
        let blocks = assignment.iter().max().map_or(0, |m| m + 1);
        let masks = self.masks_of(assignment, blocks);
        let mut inconclusive = None;
        for (block, &mask) in masks.iter().enumerate() {
            match self.oracle.decide(mask) {
                Verdict::Good => {}
                Verdict::Bad { witness, reason } => {
                    return RefutationResult::Refuted {
                        block,
                        witness: mask_indices(witness),
                        reason,
                    }
                }
                Verdict::Inconclusive => {
                    inconclusive.get_or_insert(block);
                }
            }
        }
        match inconclusive {
            Some(block) => RefutationResult::Inconclusive { block },
            None => RefutationResult::Feasible,
        }
    }

    /// Searches assignments into exactly `k` blocks in restricted growth
    /// order; returns the first good one or the refutation record.
    pub fn level(&mut self, k: usize) -> Result<LevelOutcome, SearchError> {
        let m = self.maximal().len();
        let counts = Completions::new(m, k).ok_or(SearchError::CountOverflow)?;
        let mut walk = Walk {
            oracle: &mut self.oracle,
            k,
            m,
            counts,
            assign: Vec::with_capacity(m),
            masks: vec![0; k],
            refuted: Vec::new(),
        };
        if let Some(masks) = walk.dfs(0) {
            return Ok(LevelOutcome::Feasible(masks));
        }
        let assignments = walk.counts.total();
        let refuted = walk.refuted;
        debug_assert_eq!(refuted.iter().map(|r| r.count).sum::<u128>(), assignments);
        Ok(LevelOutcome::Exhausted(LowerRecord {
            blocks: k,
            assignments,
            refuted,
        }))
    }

    fn covering_of(&self, masks: &[u64]) -> Covering {
        Covering {
            target: self.target().clone(),
            blocks: masks.iter().map(|&b| self.oracle.block_set(b)).collect(),
            witnesses: masks.iter().map(|&b| self.oracle.witness(b)).collect(),
        }
    }

    /// Direct covering to start the descent from.
    fn seed(&mut self) -> Result<Covering, SearchError> {
        let covering = match self.oracle.invariant() {
            Invariant::Tc => {
                let x = run(Invariant::Cat, self.space.clone(), &self.limits)?;
                let square = SquareSpace::new(self.space.clone());
                planner_covering(&x.covering, &square)
            }
            Invariant::Cat => match product_factors(&self.space) {
                Some((a, b)) => {
                    let ca = run(Invariant::Cat, Arc::new(a), &self.limits)?;
                    let cb = run(Invariant::Cat, Arc::new(b), &self.limits)?;
                    product_covering(&ca.covering, &cb.covering, &self.space)
                }
                None => downset_covering(&self.space),
            },
        };
        Ok(covering)
    }

    /// Runs the whole descent.
    pub fn run(mut self) -> Result<SearchReport, SearchError> {
        let invariant = self.oracle.invariant();
        let seed = self.seed()?;
        let mut best: Vec<u64> = Vec::new();
        for (block, fence) in seed.blocks.iter().zip(seed.witnesses) {
            let mask = self.oracle.mask_of(block);
            debug_assert_eq!(self.oracle.block_set(mask), *block);
            if !best.contains(&mask) {
                self.oracle.remember_good(mask, fence);
                best.push(mask);
            }
        }
        log::info!(
            "{invariant}: target has {} points, {} maximal; seed covering has {} blocks",
            self.target().len(),
            self.maximal().len(),
            best.len()
        );

        let mut lower = None;
        if best.len() > 1 {
            match self.level(1)? {
                LevelOutcome::Feasible(masks) => best = masks,
                LevelOutcome::Exhausted(record) => {
                    lower = Some(record);
                    for k in (2..best.len()).rev() {
                        match self.level(k)? {
                            LevelOutcome::Feasible(masks) => {
                                log::info!("{invariant}: {k} blocks suffice");
                                best = masks;
                            }
                            LevelOutcome::Exhausted(record) => {
                                log::info!(
                                    "{invariant}: {k} blocks refuted with {} entries",
                                    record.refuted.len()
                                );
                                lower = Some(record);
                                break;
                            }
                        }
                    }
                }
            }
        }
        if best.len() == 1 {
            lower = None;
        }
        let status = match &lower {
            Some(record) if !record.is_complete() => Status::UpperBoundOnly,
            _ => Status::Proven,
        };
        log::info!(
            "{invariant}: value {} ({status}) after {} homotopy decisions",
            best.len(),
            self.oracle.decisions()
        );
        Ok(SearchReport {
            invariant,
            space: self.space.clone(),
            value: best.len(),
            status,
            maximal: self.maximal().to_vec(),
            covering: self.covering_of(&best),
            lower,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelOutcome {
    /// Blocks of a good assignment, as masks over the maximal points.
    Feasible(Vec<u64>),
    Exhausted(LowerRecord),
}

/// Depth-first walk over restricted growth strings. Every subtree is either
/// cut with a refutation entry for its prefix or fully visited, so the
/// entries' counts add up to all assignments.
struct Walk<'a> {
    oracle: &'a mut BlockOracle,
    k: usize,
    m: usize,
    counts: Completions,
    assign: Vec<usize>,
    masks: Vec<u64>,
    refuted: Vec<Refutation>,
}

impl Walk<'_> {
    fn dfs(&mut self, used: usize) -> Option<Vec<u64>> {
        let r = self.assign.len();
        for v in 0..=used.min(self.k - 1) {
            let used_after = used.max(v + 1);
            let count = self.counts.count(r + 1, used_after);
            if count == 0 {
                continue;
            }
            self.assign.push(v);
            self.masks[v] |= 1 << r;
            let found = self.visit(used_after, v, count);
            self.masks[v] &= !(1 << r);
            self.assign.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn record(&mut self, witness: u64, reason: Reason, count: u128) {
        self.refuted.push(Refutation {
            prefix: self.assign.clone(),
            witness: mask_indices(witness),
            reason,
            count,
        });
    }

    fn visit(&mut self, used: usize, v: usize, count: u128) -> Option<Vec<u64>> {
        let mask = self.masks[v];
        if let Some((witness, reason)) = self.oracle.cheap(mask) {
            self.record(witness, reason, count);
            return None;
        }
        if self.oracle.budget().expired() {
            self.record(mask, Reason::Inconclusive, count);
            return None;
        }
        if self.assign.len() < self.m {
            return self.dfs(used);
        }
        let mut inconclusive = None;
        for b in 0..self.k {
            match self.oracle.decide(self.masks[b]) {
                Verdict::Good => {}
                Verdict::Bad { witness, reason } => {
                    self.record(witness, reason, count);
                    return None;
                }
                Verdict::Inconclusive => {
                    inconclusive.get_or_insert(self.masks[b]);
                }
            }
        }
        if let Some(mask) = inconclusive {
            self.record(mask, Reason::Inconclusive, count);
            return None;
        }
        Some(self.masks.clone())
    }
}

fn run(
    invariant: Invariant,
    space: Arc<FiniteSpace>,
    limits: &Limits,
) -> Result<SearchReport, SearchError> {
    Searcher::new(invariant, space, limits)?.run()
}

/// Lusternik–Schnirelmann category (unreduced): fewest open sets covering
/// the space, each with nullhomotopic inclusion.
pub fn cat(space: &FiniteSpace, limits: &Limits) -> Result<SearchReport, SearchError> {
    run(Invariant::Cat, Arc::new(space.clone()), limits)
}

/// Topological complexity (unreduced): fewest open sets covering `X × X`,
/// each admitting a continuous motion planner.
pub fn tc(space: &FiniteSpace, limits: &Limits) -> Result<SearchReport, SearchError> {
    run(Invariant::Tc, Arc::new(space.clone()), limits)
}

pub fn search(
    invariant: Invariant,
    space: &FiniteSpace,
    limits: &Limits,
) -> Result<SearchReport, SearchError> {
    run(invariant, Arc::new(space.clone()), limits)
}
