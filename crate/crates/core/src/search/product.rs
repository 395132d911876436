//! Coverings built directly, without search: one block per maximal point, and
//! products of `cat` coverings, giving `cat(A × B) ≤ cat(A)·cat(B)` and
//! `TC(X) ≤ cat(X)²`.

use std::sync::Arc;

use crate::homotopy::{comparability_path, Dir, Fence, SquareSpace};
use crate::space::{FiniteSpace, PointSet};

use super::report::Covering;

/// Index of each member of `set` within the subspace on `set`.
fn positions(set: &PointSet) -> Vec<usize> {
    let mut pos = vec![usize::MAX; set.universe()];
    for (i, p) in set.iter().enumerate() {
        pos[p] = i;
    }
    pos
}

/// Constant value reached at the end of a nullhomotopy.
fn end_point(fence: &Fence) -> usize {
    fence.maps().last().unwrap()[0]
}

fn fence(
    domain: FiniteSpace,
    codomain: &Arc<FiniteSpace>,
    maps: Vec<Vec<usize>>,
    dirs: Vec<Dir>,
) -> Fence {
    Fence::new_unchecked(Arc::new(domain), codomain.clone(), maps, dirs).compressed()
}

/// `cat` covering by the downsets of the maximal points: each inclusion lies
/// below the constant map at its maximal point.
pub fn downset_covering(space: &Arc<FiniteSpace>) -> Covering {
    let mut blocks = Vec::new();
    let mut witnesses = Vec::new();
    for m in space.maximal_points().iter() {
        let block = space.down(m).clone();
        let (sub, embedding) = space.subspace(&block);
        let constant = vec![m; embedding.len()];
        witnesses.push(fence(sub, space, vec![embedding, constant], vec![Dir::Le]));
        blocks.push(block);
    }
    Covering {
        target: space.clone(),
        blocks,
        witnesses,
    }
}

/// `tc` covering by the downsets `(a, b)↓` of maximal pairs:
/// `pr₁ ≤ a`, a zigzag of constants from `a` to `b`, then `b ≥ pr₂`.
pub fn pair_downset_covering(square: &SquareSpace) -> Covering {
    let base = square.base();
    let target = square.square();
    let mut blocks = Vec::new();
    let mut witnesses = Vec::new();
    for m in target.maximal_points().iter() {
        let (a, b) = (square.pr1(m), square.pr2(m));
        let block = target.down(m).clone();
        let (sub, embedding) = target.subspace(&block);
        let mut maps = vec![embedding.iter().map(|&q| square.pr1(q)).collect::<Vec<_>>()];
        let mut dirs = vec![Dir::Le];
        maps.push(vec![a; embedding.len()]);
        for (z, d) in comparability_path(base, a, b) {
            maps.push(vec![z; embedding.len()]);
            dirs.push(d);
        }
        maps.push(embedding.iter().map(|&q| square.pr2(q)).collect());
        dirs.push(Dir::Ge);
        witnesses.push(fence(sub, base, maps, dirs));
        blocks.push(block);
    }
    Covering {
        target: target.clone(),
        blocks,
        witnesses,
    }
}

/// Product of `cat` coverings of `A` and `B` as a `cat` covering of
/// `target = A × B`: contract the first coordinate with the second held
/// fixed, then the second.
pub fn product_covering(a: &Covering, b: &Covering, target: &Arc<FiniteSpace>) -> Covering {
    let nb = b.target.len();
    assert_eq!(target.len(), a.target.len() * nb);
    let mut blocks = Vec::new();
    let mut witnesses = Vec::new();
    for (u, h) in a.blocks.iter().zip(&a.witnesses) {
        let pos_u = positions(u);
        let ca = end_point(h);
        for (v, g) in b.blocks.iter().zip(&b.witnesses) {
            let pos_v = positions(v);
            let block = PointSet::from_indices(
                target.len(),
                u.iter().flat_map(|x| v.iter().map(move |y| x * nb + y)),
            );
            let (sub, embedding) = target.subspace(&block);
            let mut maps: Vec<Vec<usize>> = h
                .maps()
                .iter()
                .map(|ht| {
                    embedding
                        .iter()
                        .map(|&q| ht[pos_u[q / nb]] * nb + q % nb)
                        .collect()
                })
                .collect();
            maps.extend(g.maps()[1..].iter().map(|gt| {
                embedding
                    .iter()
                    .map(|&q| ca * nb + gt[pos_v[q % nb]])
                    .collect()
            }));
            let dirs = h.dirs().iter().chain(g.dirs()).copied().collect();
            witnesses.push(fence(sub, target, maps, dirs));
            blocks.push(block);
        }
    }
    Covering {
        target: target.clone(),
        blocks,
        witnesses,
    }
}

/// Planner covering of `X × X` from a `cat` covering of `X`: on `Uᵢ × Uⱼ`,
/// contract `pr₁` to `cᵢ`, walk the constants from `cᵢ` to `cⱼ`, and undo
/// the contraction of `pr₂`.
pub fn planner_covering(cat: &Covering, square: &SquareSpace) -> Covering {
    let base = square.base();
    let target = square.square();
    assert_eq!(**base, *cat.target);
    let mut blocks = Vec::new();
    let mut witnesses = Vec::new();
    for (u, h) in cat.blocks.iter().zip(&cat.witnesses) {
        let pos_u = positions(u);
        let cu = end_point(h);
        for (v, g) in cat.blocks.iter().zip(&cat.witnesses) {
            let pos_v = positions(v);
            let cv = end_point(g);
            let block = PointSet::from_indices(
                target.len(),
                u.iter().flat_map(|x| v.iter().map(move |y| square.pair(x, y))),
            );
            let (sub, embedding) = target.subspace(&block);
            let mut maps: Vec<Vec<usize>> = h
                .maps()
                .iter()
                .map(|ht| embedding.iter().map(|&q| ht[pos_u[square.pr1(q)]]).collect())
                .collect();
            let mut dirs: Vec<Dir> = h.dirs().to_vec();
            for (z, d) in comparability_path(base, cu, cv) {
                maps.push(vec![z; embedding.len()]);
                dirs.push(d);
            }
            let back: Vec<Vec<usize>> = g
                .maps()
                .iter()
                .map(|gt| embedding.iter().map(|&q| gt[pos_v[square.pr2(q)]]).collect())
                .collect();
            maps.extend(back.into_iter().rev().skip(1));
            dirs.extend(g.dirs().iter().rev().map(|d| d.flip()));
            witnesses.push(fence(sub, base, maps, dirs));
            blocks.push(block);
        }
    }
    Covering {
        target: target.clone(),
        blocks,
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{circle_model, interval_model, product, sphere_model};

    #[test]
    fn downset_coverings_verify() {
        for space in [circle_model(3).unwrap(), sphere_model(2).unwrap()] {
            let space = Arc::new(space);
            let cov = downset_covering(&space);
            assert_eq!(cov.blocks.len(), space.maximal_points().len());
            for w in &cov.witnesses {
                w.verify().unwrap();
                assert!(w.last().is_constant());
            }
            let square = SquareSpace::new(space.clone());
            let cov = pair_downset_covering(&square);
            for (block, w) in cov.blocks.iter().zip(&cov.witnesses) {
                let cert = crate::homotopy::PlannerCertificate {
                    block: block.clone(),
                    fence: w.clone(),
                };
                cert.verify(&square).unwrap();
            }
        }
    }

    #[test]
    fn product_coverings_verify() {
        let a = Arc::new(circle_model(3).unwrap());
        let b = Arc::new(interval_model(2).unwrap());
        let target = Arc::new(product(&a, &b));
        let cov = product_covering(&downset_covering(&a), &downset_covering(&b), &target);
        assert_eq!(cov.blocks.len(), 3);
        let mut union = target.empty_set();
        for (block, w) in cov.blocks.iter().zip(&cov.witnesses) {
            w.verify().unwrap();
            assert_eq!(**w.domain(), target.subspace(block).0);
            assert_eq!(w.maps()[0], target.subspace(block).1);
            assert!(w.last().is_constant());
            union.union_with(block);
        }
        assert!(union.is_full());

        let square = SquareSpace::new(a.clone());
        let cov = planner_covering(&downset_covering(&a), &square);
        assert_eq!(cov.blocks.len(), 9);
        for (block, w) in cov.blocks.iter().zip(&cov.witnesses) {
            let cert = crate::homotopy::PlannerCertificate {
                block: block.clone(),
                fence: w.clone(),
            };
            cert.verify(&square).unwrap();
        }
    }
}
