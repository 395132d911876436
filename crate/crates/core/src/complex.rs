//! The order complex `𝒦(X)`, whose simplices are the nonempty chains of `X`,
//! with Euler characteristic and rational Betti numbers.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::space::FiniteSpace;

/// Refuse to enumerate more simplices than this.
pub const MAX_SIMPLICES: u128 = 5_000_000;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("order complex has {0} simplices, more than the limit of {MAX_SIMPLICES}")]
    TooLarge(u128),
}

/// A simplicial complex given by all of its simplices, grouped by dimension.
/// Each simplex is a strictly increasing list of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    simplices: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub maximal_simplices: Vec<Vec<String>>,
}

impl SimplicialComplex {
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Simplices of dimension `d` (with `d + 1` vertices).
    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map_or(&[], |s| s.as_slice())
    }

    /// Largest simplex dimension; `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn maximal_simplices(&self) -> Vec<Vec<usize>> {
        let mut faces = std::collections::HashSet::new();
        for d in 1..self.simplices.len() {
            for s in &self.simplices[d] {
                for skip in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(skip);
                    faces.insert(f);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = self
            .simplices
            .iter()
            .flatten()
            .filter(|s| !faces.contains(*s))
            .cloned()
            .collect();
        out.sort();
        out
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            vertices: self.vertices.clone(),
            maximal_simplices: self
                .maximal_simplices()
                .iter()
                .map(|s| s.iter().map(|&v| self.vertices[v].clone()).collect())
                .collect(),
        }
    }

    /// Every face of every simplex is present.
    pub fn is_closed_under_faces(&self) -> bool {
        let all: std::collections::HashSet<&Vec<usize>> = self.simplices.iter().flatten().collect();
        self.simplices.iter().skip(1).flatten().all(|s| {
            (0..s.len()).all(|skip| {
                let mut f = s.clone();
                f.remove(skip);
                all.contains(&f)
            })
        })
    }
}

/// Number of chains starting at each point and going up.
fn chains_from(space: &FiniteSpace, order: &[usize]) -> Vec<u128> {
    let mut count = vec![0u128; space.len()];
    for &x in order.iter().rev() {
        count[x] = 1 + space
            .up(x)
            .iter()
            .filter(|&y| y != x)
            .map(|y| count[y])
            .sum::<u128>();
    }
    count
}

/// All chains of the space, vertices indexed like the space's points; each
/// simplex lists its chain from bottom to top.
pub fn order_complex(space: &FiniteSpace) -> Result<SimplicialComplex, ComplexError> {
    let order = space.linear_extension();
    let total: u128 = chains_from(space, &order).iter().sum();
    if total > MAX_SIMPLICES {
        return Err(ComplexError::TooLarge(total));
    }
    let mut simplices: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut chain = Vec::new();
    fn extend(space: &FiniteSpace, chain: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        let d = chain.len() - 1;
        if out.len() <= d {
            out.resize(d + 1, Vec::new());
        }
        out[d].push(chain.clone());
        let top = *chain.last().unwrap();
        for y in space.up(top).iter().filter(|&y| y != top) {
            chain.push(y);
            extend(space, chain, out);
            chain.pop();
        }
    }
    for x in 0..space.len() {
        chain.push(x);
        extend(space, &mut chain, &mut simplices);
        chain.pop();
    }
    // Store each simplex as a sorted index list for face lookups.
    for level in simplices.iter_mut() {
        for s in level.iter_mut() {
            s.sort_unstable();
        }
        level.sort();
    }
    Ok(SimplicialComplex {
        vertices: space.labels().to_vec(),
        simplices,
    })
}

pub fn euler_characteristic(complex: &SimplicialComplex) -> i64 {
    complex
        .counts()
        .iter()
        .enumerate()
        .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

/// Rank over ℚ of the boundary map from dimension `d` to `d − 1`.
pub fn boundary_rank(complex: &SimplicialComplex, d: usize) -> usize {
    if d == 0 {
        return 0;
    }
    let faces: BTreeMap<&Vec<usize>, usize> = complex
        .simplices(d - 1)
        .iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    // One sparse row per d-simplex: its boundary in the face basis.
    let rows: Vec<BTreeMap<usize, BigRational>> = complex
        .simplices(d)
        .iter()
        .map(|s| {
            (0..s.len())
                .map(|skip| {
                    let mut f = s.clone();
                    f.remove(skip);
                    let sign = if skip % 2 == 0 {
                        BigRational::one()
                    } else {
                        -BigRational::one()
                    };
                    (faces[&f], sign)
                })
                .collect()
        })
        .collect();
    sparse_rank(rows)
}

/// Rank of a matrix given by sparse rows, by elimination over ℚ.
fn sparse_rank(rows: Vec<BTreeMap<usize, BigRational>>) -> usize {
    // Pivot column → reduced row with leading entry 1 at that column.
    let mut pivots: BTreeMap<usize, BTreeMap<usize, BigRational>> = BTreeMap::new();
    for mut row in rows {
        loop {
            let Some((&lead, _)) = row.iter().next() else { break };
            let Some(pivot) = pivots.get(&lead) else {
                let inv = row[&lead].recip();
                for v in row.values_mut() {
                    *v *= &inv;
                }
                pivots.insert(lead, row);
                break;
            };
            let factor = row[&lead].clone();
            for (&c, v) in pivot {
                let entry = row.entry(c).or_insert_with(BigRational::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    row.remove(&c);
                }
            }
        }
    }
    pivots.len()
}

/// Betti numbers over ℚ. `b2` is only given when the complex has no
/// simplices above dimension 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Betti {
    pub b0: usize,
    pub b1: usize,
    pub b2: Option<usize>,
}

pub fn betti(complex: &SimplicialComplex) -> Betti {
    let n = |d: usize| complex.simplices(d).len();
    let r1 = boundary_rank(complex, 1);
    let r2 = boundary_rank(complex, 2);
    let b2 = (complex.dimension().unwrap_or(0) <= 2).then(|| n(2) - r2);
    Betti {
        b0: n(0) - r1,
        b1: n(1) - r1 - r2,
        b2,
    }
}

/// The McCord map on barycenters: each simplex (chain) goes to its minimum.
/// Pairs each simplex with the index of that point.
pub fn mccord_vertex_map(space: &FiniteSpace, complex: &SimplicialComplex) -> Vec<(Vec<usize>, usize)> {
    complex
        .simplices
        .iter()
        .flatten()
        .map(|s| {
            let min = *s
                .iter()
                .find(|&&v| s.iter().all(|&w| space.leq(v, w)))
                .expect("simplices are chains");
            (s.clone(), min)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::core;
    use crate::space::{circle_model, discrete, interval_model, nh_join, point, sphere_model};

    #[test]
    fn join_of_discrete_spaces_is_a_graph() {
        let z = nh_join(&discrete(3).unwrap(), &discrete(4).unwrap());
        let k = order_complex(&z).unwrap();
        assert_eq!(k.counts(), vec![7, 12]);
        assert_eq!(betti(&k), Betti { b0: 1, b1: 6, b2: Some(0) });
        assert!(k.is_closed_under_faces());
    }

    #[test]
    fn small_complexes() {
        let k = order_complex(&point()).unwrap();
        assert_eq!(k.counts(), vec![1]);
        let j = order_complex(&interval_model(4).unwrap()).unwrap();
        assert_eq!(j.counts(), vec![5, 4]);
        assert_eq!(euler_characteristic(&j), 1);
        for n in 2..6 {
            let c = order_complex(&circle_model(n).unwrap()).unwrap();
            assert_eq!(euler_characteristic(&c), 0);
            assert_eq!(betti(&c), Betti { b0: 1, b1: 1, b2: Some(0) });
        }
        let s2 = order_complex(&sphere_model(2).unwrap()).unwrap();
        assert_eq!(euler_characteristic(&s2), 2);
        assert_eq!(betti(&s2), Betti { b0: 1, b1: 0, b2: Some(1) });
        let s3 = order_complex(&sphere_model(3).unwrap()).unwrap();
        assert_eq!(betti(&s3).b2, None);
        assert_eq!(betti(&s3).b1, 0);
    }

    #[test]
    fn euler_characteristic_survives_core_reduction() {
        let j = interval_model(6).unwrap();
        let a = euler_characteristic(&order_complex(&j).unwrap());
        let b = euler_characteristic(&order_complex(&core(&j)).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn mccord_sends_chains_to_minimum() {
        let j = interval_model(2).unwrap();
        let k = order_complex(&j).unwrap();
        let table = mccord_vertex_map(&j, &k);
        for (s, m) in &table {
            assert!(s.contains(m));
            if s.len() == 1 {
                assert_eq!(s[0], *m);
            }
        }
        // The edge x1–x2 maps to x2.
        assert!(table.contains(&(vec![1, 2], 2)));
    }
}
