//! A fence `f₀ ≤ f₁ ≥ f₂ ≤ ⋯ fₘ` is the same data as the continuous map
//! `Q × Jₘ → X`, `(q, xₜ) ↦ fₜ(q)`.

use std::sync::Arc;

use thiserror::Error;

use crate::homotopy::{ContinuousMap, Dir, Fence, PlannerCertificate};
use crate::space::{interval_model, product, FiniteSpace};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum IntervalMapError {
    #[error("domain is not a product of the block with an interval model")]
    WrongDomain,
    #[error(transparent)]
    Fence(#[from] crate::homotopy::FenceError),
}

/// The planner of `cert` as a map `Q × Jₘ → X`, where `m + 1` is the length
/// of the alternating form of its fence.
pub fn planner_to_interval_map(cert: &PlannerCertificate) -> ContinuousMap {
    let fence = cert.fence.alternating();
    let m = fence.len() - 1;
    let q = fence.domain();
    let domain = Arc::new(product(q, &interval_model(m).expect("m ≥ 0")));
    let assignment = (0..q.len())
        .flat_map(|p| fence.maps().iter().map(move |f| f[p]))
        .collect();
    ContinuousMap::new(domain, fence.codomain().clone(), assignment)
        .expect("alternating fences give order-preserving maps")
}

/// Inverse of [`planner_to_interval_map`]: reads the fence back from a map
/// out of `block × Jₘ`.
pub fn interval_map_to_fence(
    map: &ContinuousMap,
    block: Arc<FiniteSpace>,
) -> Result<Fence, IntervalMapError> {
    let total = map.domain().len();
    if block.is_empty() || !total.is_multiple_of(block.len()) {
        return Err(IntervalMapError::WrongDomain);
    }
    let steps = total / block.len();
    let expected = product(&block, &interval_model(steps - 1).expect("m ≥ 0"));
    if **map.domain() != expected {
        return Err(IntervalMapError::WrongDomain);
    }
    let maps = (0..steps)
        .map(|t| (0..block.len()).map(|p| map.apply(p * steps + t)).collect())
        .collect();
    let dirs = (0..steps - 1)
        .map(|t| if t % 2 == 0 { Dir::Le } else { Dir::Ge })
        .collect();
    Ok(Fence::new(block, map.codomain().clone(), maps, dirs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::{Budget, SquareSpace};
    use crate::space::sphere_model;

    #[test]
    fn round_trip_on_sphere_planners() {
        let sq = SquareSpace::new(Arc::new(sphere_model(1).unwrap()));
        for m in sq.square().maximal_points().iter() {
            let block = sq.square().down(m).clone();
            let d = sq.admits_planner(&block, &Budget::unlimited()).unwrap();
            let cert = d.found().unwrap();
            let s = planner_to_interval_map(cert);
            let back = interval_map_to_fence(&s, cert.fence.domain().clone()).unwrap();
            assert_eq!(back, cert.fence.alternating());
            let steps = back.len();
            let (p1, p2) = sq.projection_maps(&block);
            for p in 0..block.len() {
                assert_eq!(s.apply(p * steps), p1.apply(p));
                assert_eq!(s.apply(p * steps + steps - 1), p2.apply(p));
            }
        }
    }
}
