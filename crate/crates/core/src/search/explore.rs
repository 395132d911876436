//! The two-set antidiagonal cover of `𝕊¹ₙ × 𝕊¹ₙ`.
//!
//! With `A = {(p, −p)}`, `D = A↑` is closed, so `Q₁ = (X × X) − D` is open,
//! and `Q₂ = D↓` is open and contains `D`; together they cover. Whether both
//! admit planners is decided by the homotopy engine like any other block.
//!
//! The antipode is the rotation by `⌊n/2⌋` positions on points of the same
//! type: `xᵢ ↦ x_{i+⌊n/2⌋}`, `yᵢ ↦ y_{i+⌊n/2⌋}` (indices mod `n`).

use std::sync::Arc;

use crate::homotopy::{Decision, LimitCause, Limits, PlannerCertificate, SquareSpace};
use crate::space::{circle_model, FiniteSpace, PointSet, SpaceError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Certificate(PlannerCertificate),
    Refutation { explored: usize },
    Inconclusive { explored: usize, cause: LimitCause },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExploredSet {
    pub name: String,
    pub points: PointSet,
    pub open: bool,
    pub obstructed: bool,
    pub outcome: Outcome,
}

#[derive(Debug, Clone)]
pub struct ExplorationReport {
    pub n: usize,
    pub antipode_shift: usize,
    pub square: SquareSpace,
    pub sets: Vec<ExploredSet>,
    pub covers: bool,
}

impl ExplorationReport {
    pub fn space(&self) -> &Arc<FiniteSpace> {
        self.square.base()
    }
}

/// Antipode of point `p` of `circle_model(n)`.
pub fn antipode(n: usize, p: usize) -> usize {
    let (kind, i) = (p / n, p % n);
    kind * n + (i + n / 2) % n
}

/// The closure `D` of the antidiagonal and the sets `Q₁ = (X × X) − D`,
/// `Q₂ = D↓`.
pub fn antidiagonal_sets(square: &SquareSpace, n: usize) -> (PointSet, PointSet, PointSet) {
    let base = square.base();
    let target = square.square();
    let anti = PointSet::from_indices(
        target.len(),
        (0..base.len()).map(|p| square.pair(p, antipode(n, p))),
    );
    let d = target.up_closure(&anti);
    let q1 = d.complement();
    let q2 = target.down_closure(&d);
    (d, q1, q2)
}

pub fn explore_antidiagonal_cover(n: usize, limits: &Limits) -> Result<ExplorationReport, SpaceError> {
    let square = SquareSpace::new(Arc::new(circle_model(n)?));
    let (_, q1, q2) = antidiagonal_sets(&square, n);
    let covers = q1.union(&q2).is_full();
    let budget = limits.start();
    let mut sets = Vec::new();
    for (name, points) in [("Q1", q1), ("Q2", q2)] {
        let open = square.square().is_open(&points);
        let obstructed = square.obstructed(&points);
        let outcome = if points.is_empty() || !open {
            Outcome::Inconclusive {
                explored: 0,
                cause: LimitCause::Visited,
            }
        } else {
            match square
                .admits_planner(&points, &budget)
                .expect("checked open and nonempty")
            {
                Decision::Found(cert) => Outcome::Certificate(cert),
                Decision::Refuted { explored } => Outcome::Refutation { explored },
                Decision::Inconclusive { explored, cause } => {
                    Outcome::Inconclusive { explored, cause }
                }
            }
        };
        log::info!("{name}: {} points, outcome {:?}", points.len(), outcome_kind(&outcome));
        sets.push(ExploredSet {
            name: name.to_string(),
            points,
            open,
            obstructed,
            outcome,
        });
    }
    Ok(ExplorationReport {
        n,
        antipode_shift: n / 2,
        square,
        sets,
        covers,
    })
}

fn outcome_kind(outcome: &Outcome) -> &'static str {
    match outcome {
        Outcome::Certificate(_) => "certificate",
        Outcome::Refutation { .. } => "refutation",
        Outcome::Inconclusive { .. } => "inconclusive",
    }
}
