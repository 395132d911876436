//! Breadth-first search of a connected component of the poset of continuous
//! maps `D → C`.
//!
//! Neighbours of `f` are the maps obtained by changing the value at a single
//! point `q` to an upper or lower cover of `f(q)`, whenever the result is
//! still order-preserving. Such a map is comparable to `f`, and any two
//! comparable maps are joined by a chain of such moves, so the component
//! reached is exactly the component of `f` in the hom-poset.

use std::time::{Duration, Instant};

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

use super::map::Dir;
use crate::space::FiniteSpace;

/// Caps on the work spent deciding a single homotopy question.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Limits {
    /// Maximum number of maps visited by one component search.
    pub max_visited: usize,
    /// Wall-clock budget for a whole search, in seconds.
    pub max_seconds: Option<f64>,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_visited: 2_000_000,
            max_seconds: None,
        }
    }
}

impl Limits {
    pub fn start(&self) -> Budget {
        Budget {
            max_visited: self.max_visited,
            deadline: self
                .max_seconds
                .map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0))),
        }
    }
}

/// A started [`Limits`]: the deadline is fixed at creation.
#[derive(Debug, Clone)]
pub struct Budget {
    max_visited: usize,
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self {
            max_visited: usize::MAX,
            deadline: None,
        }
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LimitCause {
    Visited,
    Time,
}

/// Three-valued answer of a homotopy decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision<T> {
    Found(T),
    /// The whole component was enumerated without meeting the goal.
    Refuted { explored: usize },
    /// A limit was hit first. Never to be read as a refutation.
    Inconclusive { explored: usize, cause: LimitCause },
}

impl<T> Decision<T> {
    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Decision<U> {
        match self {
            Decision::Found(t) => Decision::Found(f(t)),
            Decision::Refuted { explored } => Decision::Refuted { explored },
            Decision::Inconclusive { explored, cause } => Decision::Inconclusive { explored, cause },
        }
    }

    pub fn found(&self) -> Option<&T> {
        match self {
            Decision::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Decision::Found(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Decision::Refuted { .. })
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Decision::Inconclusive { .. })
    }
}

pub(crate) enum Goal<'a> {
    Map(&'a [usize]),
    AnyConstant,
}

impl Goal<'_> {
    fn reached(&self, map: &[u16]) -> bool {
        match self {
            Goal::Map(g) => map.iter().zip(g.iter()).all(|(&a, &b)| a as usize == b),
            Goal::AnyConstant => map.windows(2).all(|w| w[0] == w[1]),
        }
    }
}

/// A path of maps from the start to the goal with the direction of each step.
pub(crate) type MapPath = (Vec<Vec<usize>>, Vec<Dir>);

/// Searches the component of `start` for a map meeting `goal`.
pub(crate) fn connect(
    domain: &FiniteSpace,
    codomain: &FiniteSpace,
    start: &[usize],
    goal: Goal<'_>,
    budget: &Budget,
) -> Decision<MapPath> {
    assert!(codomain.len() <= u16::MAX as usize, "codomain too large");
    let start: Box<[u16]> = start.iter().map(|&p| p as u16).collect();
    if goal.reached(&start) {
        return Decision::Found((vec![widen(&start)], Vec::new()));
    }
    let order = domain.linear_extension();
    let lower: Vec<&[usize]> = (0..domain.len()).map(|q| domain.lower_covers(q)).collect();
    let upper: Vec<&[usize]> = (0..domain.len()).map(|q| domain.upper_covers(q)).collect();

    let mut seen: IndexSet<Box<[u16]>> = IndexSet::new();
    let mut parent: Vec<(u32, Dir)> = Vec::new();
    seen.insert(start);
    parent.push((u32::MAX, Dir::Le));

    let mut head = 0;
    let mut candidates: Vec<u16> = Vec::new();
    while head < seen.len() {
        if head % 1024 == 0 && budget.expired() {
            return Decision::Inconclusive {
                explored: seen.len(),
                cause: LimitCause::Time,
            };
        }
        let current = seen[head].clone();
        for &q in &order {
            let value = current[q] as usize;
            candidates.clear();
            candidates.extend(codomain.lower_covers(value).iter().map(|&c| c as u16));
            candidates.extend(codomain.upper_covers(value).iter().map(|&c| c as u16));
            for &c in &candidates {
                let ci = c as usize;
                let ok = lower[q].iter().all(|&p| codomain.leq(current[p] as usize, ci))
                    && upper[q].iter().all(|&r| codomain.leq(ci, current[r] as usize));
                if !ok {
                    continue;
                }
                let mut next = current.clone();
                next[q] = c;
                let dir = if codomain.leq(value, ci) { Dir::Le } else { Dir::Ge };
                if seen.contains(&next) {
                    continue;
                }
                let reached = goal.reached(&next);
                seen.insert(next);
                parent.push((head as u32, dir));
                if reached {
                    return Decision::Found(trace(&seen, &parent, seen.len() - 1));
                }
                if seen.len() >= budget.max_visited {
                    return Decision::Inconclusive {
                        explored: seen.len(),
                        cause: LimitCause::Visited,
                    };
                }
            }
        }
        head += 1;
    }
    Decision::Refuted {
        explored: seen.len(),
    }
}

fn widen(map: &[u16]) -> Vec<usize> {
    map.iter().map(|&p| p as usize).collect()
}

fn trace(seen: &IndexSet<Box<[u16]>>, parent: &[(u32, Dir)], mut node: usize) -> MapPath {
    let mut maps = vec![widen(&seen[node])];
    let mut dirs = Vec::new();
    while parent[node].0 != u32::MAX {
        let (p, d) = parent[node];
        dirs.push(d);
        node = p as usize;
        maps.push(widen(&seen[node]));
    }
    maps.reverse();
    dirs.reverse();
    (maps, dirs)
}
