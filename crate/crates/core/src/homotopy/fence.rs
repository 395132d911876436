use std::sync::Arc;

use thiserror::Error;

use super::map::{check_assignment, ContinuousMap, Dir, MapError};
use crate::space::{FiniteSpace, PointSet};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FenceError {
    #[error("fence has no maps")]
    Empty,
    #[error("fence has {maps} maps but {dirs} direction tags")]
    TagCount { maps: usize, dirs: usize },
    #[error("map {step}: {source}")]
    Map { step: usize, source: MapError },
    #[error("maps {step} and {next} are not related by `{dir:?}` at `{point}`", next = step + 1)]
    NotComparable {
        step: usize,
        dir: Dir,
        point: String,
    },
    #[error("fences do not share domain and codomain")]
    Incompatible,
    #[error("fences do not meet: last map of the first differs from first map of the second")]
    Disconnected,
}

/// A zigzag `f₀ ⋚ f₁ ⋚ ⋯ ⋚ f_k` of continuous maps with common domain and
/// codomain, consecutive maps comparable pointwise in the tagged direction.
///
/// Two maps between finite spaces are homotopic exactly when a fence joins
/// them; a fence with `k + 1` maps is the same data as a continuous map
/// `domain × J_k → codomain`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fence {
    domain: Arc<FiniteSpace>,
    codomain: Arc<FiniteSpace>,
    maps: Vec<Vec<usize>>,
    dirs: Vec<Dir>,
}

impl Fence {
    /// Builds and verifies a fence.
    pub fn new(
        domain: Arc<FiniteSpace>,
        codomain: Arc<FiniteSpace>,
        maps: Vec<Vec<usize>>,
        dirs: Vec<Dir>,
    ) -> Result<Self, FenceError> {
        let fence = Self {
            domain,
            codomain,
            maps,
            dirs,
        };
        fence.verify()?;
        Ok(fence)
    }

    pub(crate) fn new_unchecked(
        domain: Arc<FiniteSpace>,
        codomain: Arc<FiniteSpace>,
        maps: Vec<Vec<usize>>,
        dirs: Vec<Dir>,
    ) -> Self {
        let fence = Self {
            domain,
            codomain,
            maps,
            dirs,
        };
        debug_assert_eq!(fence.verify(), Ok(()));
        fence
    }

    /// The one-map fence at `map`.
    pub fn trivial(map: &ContinuousMap) -> Self {
        Self {
            domain: map.domain().clone(),
            codomain: map.codomain().clone(),
            maps: vec![map.assignment().to_vec()],
            dirs: Vec::new(),
        }
    }

    /// Independent re-check of every fence invariant: each map is
    /// order-preserving and consecutive maps satisfy their tag at every
    /// point.
    pub fn verify(&self) -> Result<(), FenceError> {
        if self.maps.is_empty() {
            return Err(FenceError::Empty);
        }
        if self.dirs.len() + 1 != self.maps.len() {
            return Err(FenceError::TagCount {
                maps: self.maps.len(),
                dirs: self.dirs.len(),
            });
        }
        for (step, map) in self.maps.iter().enumerate() {
            check_assignment(&self.domain, &self.codomain, map)
                .map_err(|source| FenceError::Map { step, source })?;
        }
        for (step, &dir) in self.dirs.iter().enumerate() {
            let (f, g) = (&self.maps[step], &self.maps[step + 1]);
            if let Some(q) = (0..f.len()).find(|&q| !dir.holds(&self.codomain, f[q], g[q])) {
                return Err(FenceError::NotComparable {
                    step,
                    dir,
                    point: self.domain.label(q).to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> &Arc<FiniteSpace> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteSpace> {
        &self.codomain
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn dirs(&self) -> &[Dir] {
        &self.dirs
    }

    /// Number of maps.
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn step(&self, i: usize) -> ContinuousMap {
        ContinuousMap::new_unchecked(
            self.domain.clone(),
            self.codomain.clone(),
            self.maps[i].clone(),
        )
    }

    pub fn first(&self) -> ContinuousMap {
        self.step(0)
    }

    pub fn last(&self) -> ContinuousMap {
        self.step(self.maps.len() - 1)
    }

    pub fn reversed(&self) -> Fence {
        let mut maps = self.maps.clone();
        maps.reverse();
        let dirs = self.dirs.iter().rev().map(|d| d.flip()).collect();
        Self {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            maps,
            dirs,
        }
    }

    /// `self` followed by `other`; the last map of `self` must equal the
    /// first map of `other` and appears once in the result.
    pub fn concat(&self, other: &Fence) -> Result<Fence, FenceError> {
        if *self.domain != *other.domain || *self.codomain != *other.codomain {
            return Err(FenceError::Incompatible);
        }
        if self.maps.last() != other.maps.first() {
            return Err(FenceError::Disconnected);
        }
        let mut maps = self.maps.clone();
        maps.extend(other.maps[1..].iter().cloned());
        let mut dirs = self.dirs.clone();
        dirs.extend(other.dirs.iter().copied());
        Ok(Self {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            maps,
            dirs,
        })
    }

    /// Restriction of every map to the subspace on `set`. Comparabilities
    /// survive restriction, so the result is again a fence.
    pub fn restrict(&self, set: &PointSet) -> Fence {
        let (sub, embedding) = self.domain.subspace(set);
        let maps = self
            .maps
            .iter()
            .map(|m| embedding.iter().map(|&p| m[p]).collect())
            .collect();
        Self::new_unchecked(Arc::new(sub), self.codomain.clone(), maps, self.dirs.clone())
    }

    /// Post-composition with `g`.
    pub fn then(&self, g: &ContinuousMap) -> Result<Fence, FenceError> {
        if *self.codomain != **g.domain() {
            return Err(FenceError::Incompatible);
        }
        let maps = self
            .maps
            .iter()
            .map(|m| m.iter().map(|&p| g.apply(p)).collect())
            .collect();
        Ok(Self::new_unchecked(
            self.domain.clone(),
            g.codomain().clone(),
            maps,
            self.dirs.clone(),
        ))
    }

    /// Drops repeated maps and merges consecutive steps with the same
    /// direction, leaving an alternating zigzag with the same endpoints.
    pub fn compressed(&self) -> Fence {
        let (maps, dirs) = compress(self.maps.clone(), self.dirs.clone());
        Self {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            maps,
            dirs,
        }
    }

    /// Same endpoints, directions alternating `le, ge, le, …` starting with
    /// `le`, obtained by repeating maps where needed. This is the shape that
    /// corresponds to a map out of `domain × Jₘ`.
    pub fn alternating(&self) -> Fence {
        let (maps, dirs) = compress(self.maps.clone(), self.dirs.clone());
        let mut out_maps = vec![maps[0].clone()];
        let mut out_dirs = Vec::new();
        for (i, &d) in dirs.iter().enumerate() {
            let want = if out_dirs.len() % 2 == 0 { Dir::Le } else { Dir::Ge };
            if d != want {
                // Repeat the current map to flip parity.
                out_maps.push(out_maps.last().unwrap().clone());
                out_dirs.push(want);
            }
            out_maps.push(maps[i + 1].clone());
            out_dirs.push(d);
        }
        Self {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            maps: out_maps,
            dirs: out_dirs,
        }
    }
}

/// Removes consecutive duplicates and merges same-direction runs.
pub(crate) fn compress(maps: Vec<Vec<usize>>, dirs: Vec<Dir>) -> (Vec<Vec<usize>>, Vec<Dir>) {
    let mut out_maps: Vec<Vec<usize>> = Vec::with_capacity(maps.len());
    let mut out_dirs: Vec<Dir> = Vec::with_capacity(dirs.len());
    let mut iter = maps.into_iter();
    out_maps.push(iter.next().expect("fence has at least one map"));
    for (map, dir) in iter.zip(dirs) {
        if *out_maps.last().unwrap() == map {
            continue;
        }
        if out_dirs.last() == Some(&dir) {
            *out_maps.last_mut().unwrap() = map;
        } else {
            out_maps.push(map);
            out_dirs.push(dir);
        }
    }
    (out_maps, out_dirs)
}

/// A zigzag `from = z₀ ⋚ z₁ ⋚ ⋯ ⋚ z_r = to` along Hasse edges.
pub(crate) fn comparability_path(
    space: &FiniteSpace,
    from: usize,
    to: usize,
) -> Vec<(usize, Dir)> {
    let mut parent = vec![usize::MAX; space.len()];
    parent[from] = from;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(p) = queue.pop_front() {
        if p == to {
            break;
        }
        for &q in space.lower_covers(p).iter().chain(space.upper_covers(p)) {
            if parent[q] == usize::MAX {
                parent[q] = p;
                queue.push_back(q);
            }
        }
    }
    assert!(parent[to] != usize::MAX, "points lie in different components");
    let mut path = Vec::new();
    let mut p = to;
    while p != from {
        let prev = parent[p];
        let dir = if space.leq(prev, p) { Dir::Le } else { Dir::Ge };
        path.push((p, dir));
        p = prev;
    }
    path.reverse();
    path
}
