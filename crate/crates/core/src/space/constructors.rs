//! The families of finite spaces used throughout: discrete spaces, interval
//! models `Jₘ`, circle models `𝕊¹ₙ`, minimal sphere models `𝕊ⁿ`, and the
//! product, opposite, non-Hausdorff join/suspension and wedge operations.

use std::collections::HashSet;

use super::{FiniteSpace, SpaceError, SpaceKind};

fn numbered(prefix: &str, count: usize) -> impl Iterator<Item = String> + '_ {
    (0..count).map(move |i| format!("{prefix}{i}"))
}

fn build(labels: Vec<String>, relation: &[(usize, usize)], kind: SpaceKind) -> FiniteSpace {
    FiniteSpace::from_relation(labels, relation, kind)
        .expect("constructor produced an invalid order")
}

/// The one-point space.
pub fn point() -> FiniteSpace {
    build(vec!["x0".into()], &[], SpaceKind::Discrete(1))
}

/// `n` pairwise incomparable points `x0 … x{n-1}`.
pub fn discrete(n: usize) -> Result<FiniteSpace, SpaceError> {
    if n < 1 {
        return Err(SpaceError::ParameterTooSmall {
            constructor: "discrete",
            value: n,
            min: 1,
        });
    }
    Ok(build(numbered("x", n).collect(), &[], SpaceKind::Discrete(n)))
}

/// The fence `x0 ≤ x1 ≥ x2 ≤ ⋯ xₘ`: odd-indexed points are maximal.
pub fn interval_model(m: usize) -> Result<FiniteSpace, SpaceError> {
    let mut relation = Vec::new();
    for i in (1..=m).step_by(2) {
        relation.push((i - 1, i));
        if i < m {
            relation.push((i + 1, i));
        }
    }
    Ok(build(
        numbered("x", m + 1).collect(),
        &relation,
        SpaceKind::Interval(m),
    ))
}

/// The circle model with `2n` points: minimal `x0 … x{n-1}`, maximal
/// `y0 … y{n-1}`, and `yᵢ↓ = {yᵢ, xᵢ, x_{i-1 mod n}}`.
pub fn circle_model(n: usize) -> Result<FiniteSpace, SpaceError> {
    if n < 2 {
        return Err(SpaceError::ParameterTooSmall {
            constructor: "circle",
            value: n,
            min: 2,
        });
    }
    let labels = numbered("x", n).chain(numbered("y", n)).collect();
    let relation: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| [(i, n + i), ((i + n - 1) % n, n + i)])
        .collect();
    Ok(build(labels, &relation, SpaceKind::Circle(n)))
}

/// The minimal model of the `n`-sphere: `n + 1` levels of two incomparable
/// points `xⱼ, yⱼ`, every point of a level below every point of the next.
pub fn sphere_model(n: usize) -> Result<FiniteSpace, SpaceError> {
    let labels = (0..=n)
        .flat_map(|j| [format!("x{j}"), format!("y{j}")])
        .collect();
    let mut relation = Vec::new();
    for j in 0..n {
        for a in [2 * j, 2 * j + 1] {
            for b in [2 * j + 2, 2 * j + 3] {
                relation.push((a, b));
            }
        }
    }
    Ok(build(labels, &relation, SpaceKind::Sphere(n)))
}

/// Product space with the product order. Points are ordered left factor
/// major and labelled `(a,b)`.
pub fn product(a: &FiniteSpace, b: &FiniteSpace) -> FiniteSpace {
    let nb = b.len();
    let labels = a
        .labels()
        .iter()
        .flat_map(|la| b.labels().iter().map(move |lb| format!("({la},{lb})")))
        .collect();
    let mut relation = Vec::new();
    for (x, y) in a.hasse_edges() {
        for j in 0..nb {
            relation.push((x * nb + j, y * nb + j));
        }
    }
    for (x, y) in b.hasse_edges() {
        for i in 0..a.len() {
            relation.push((i * nb + x, i * nb + y));
        }
    }
    build(
        labels,
        &relation,
        SpaceKind::Product(Box::new(a.kind().clone()), Box::new(b.kind().clone())),
    )
}

/// Same points, reversed order.
pub fn opposite(space: &FiniteSpace) -> FiniteSpace {
    let relation: Vec<(usize, usize)> = space.hasse_edges().into_iter().map(|(x, y)| (y, x)).collect();
    build(
        space.labels().to_vec(),
        &relation,
        SpaceKind::Opposite(Box::new(space.kind().clone())),
    )
}

/// Renames `labels` by appending primes until none collides with `taken`.
fn disjoint_labels(taken: &HashSet<&str>, labels: &[String]) -> Vec<String> {
    let mut suffix = String::new();
    loop {
        let renamed: Vec<String> = labels.iter().map(|l| format!("{l}{suffix}")).collect();
        if renamed.iter().all(|l| !taken.contains(l.as_str())) {
            return renamed;
        }
        suffix.push('\'');
    }
}

fn join_with_kind(x: &FiniteSpace, y: &FiniteSpace, kind: SpaceKind) -> FiniteSpace {
    let nx = x.len();
    let taken: HashSet<&str> = x.labels().iter().map(String::as_str).collect();
    let mut labels = x.labels().to_vec();
    labels.extend(disjoint_labels(&taken, y.labels()));
    let mut relation = x.hasse_edges();
    relation.extend(y.hasse_edges().into_iter().map(|(a, b)| (nx + a, nx + b)));
    for a in x.maximal_points().iter() {
        for b in y.minimal_points().iter() {
            relation.push((a, nx + b));
        }
    }
    build(labels, &relation, kind)
}

/// Non-Hausdorff join `X ⊛ Y`: disjoint union with every point of `X` below
/// every point of `Y`. Labels of `Y` that clash with `X` get primes appended.
pub fn nh_join(x: &FiniteSpace, y: &FiniteSpace) -> FiniteSpace {
    join_with_kind(
        x,
        y,
        SpaceKind::Join(Box::new(x.kind().clone()), Box::new(y.kind().clone())),
    )
}

/// Non-Hausdorff suspension `X ⊛ 𝕊⁰`.
pub fn nh_suspension(x: &FiniteSpace) -> FiniteSpace {
    let s0 = discrete(2).expect("two points");
    join_with_kind(x, &s0, SpaceKind::Suspension(Box::new(x.kind().clone())))
}

/// Wedge of `spaces`, identifying the given basepoints (by label) to a single
/// point. Basepoints must be all maximal or all minimal in their spaces.
///
/// The merged point keeps the first basepoint's label. If any other labels
/// clash, every non-basepoint label of summand `i` gets the suffix `_i`
/// (1-based).
pub fn wedge<S: AsRef<str>>(
    spaces: &[FiniteSpace],
    basepoints: &[S],
) -> Result<FiniteSpace, SpaceError> {
    if spaces.len() != basepoints.len() {
        return Err(SpaceError::WedgeArity {
            spaces: spaces.len(),
            basepoints: basepoints.len(),
        });
    }
    if spaces.is_empty() {
        return Err(SpaceError::Empty);
    }
    let mut bases = Vec::with_capacity(spaces.len());
    let (mut all_max, mut all_min) = (true, true);
    for (space, base) in spaces.iter().zip(basepoints) {
        let b = space.point(base.as_ref())?;
        let (is_max, is_min) = (space.is_maximal(b), space.is_minimal(b));
        if !is_max && !is_min {
            return Err(SpaceError::BasepointNotExtremal(base.as_ref().to_string()));
        }
        all_max &= is_max;
        all_min &= is_min;
        bases.push(b);
    }
    if !all_max && !all_min {
        return Err(SpaceError::MixedBasepoints);
    }

    let base_label = spaces[0].label(bases[0]).to_string();
    let mut seen = HashSet::new();
    let mut clash = false;
    for (k, space) in spaces.iter().enumerate() {
        for p in (0..space.len()).filter(|&p| p != bases[k]) {
            clash |= !seen.insert(space.label(p));
        }
    }
    clash |= seen.contains(base_label.as_str());

    let mut labels = Vec::new();
    let mut relation = Vec::new();
    let mut merged = 0;
    for (k, space) in spaces.iter().enumerate() {
        let mut index = vec![0; space.len()];
        for p in 0..space.len() {
            if p == bases[k] {
                if k == 0 {
                    merged = labels.len();
                    labels.push(base_label.clone());
                }
                index[p] = merged;
            } else {
                index[p] = labels.len();
                labels.push(if clash {
                    format!("{}_{}", space.label(p), k + 1)
                } else {
                    space.label(p).to_string()
                });
            }
        }
        relation.extend(space.hasse_edges().into_iter().map(|(a, b)| (index[a], index[b])));
    }
    let kind = SpaceKind::Wedge(
        spaces
            .iter()
            .zip(basepoints)
            .map(|(s, b)| (s.kind().clone(), b.as_ref().to_string()))
            .collect(),
    );
    FiniteSpace::from_relation(labels, &relation, kind)
}
