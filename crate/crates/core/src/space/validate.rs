use std::collections::HashSet;
use std::fmt;

use super::{FiniteSpace, PointSet, SpaceKind};

/// An unchecked order: labels, a claimed comparability matrix and claimed
/// Hasse edges. This is what [`validate`] inspects before a
/// [`FiniteSpace`] is built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawSpace {
    pub labels: Vec<String>,
    /// `leq[a][b]` claims `a ≤ b`.
    pub leq: Vec<Vec<bool>>,
    /// Claimed cover relations `(below, above)`.
    pub hasse: Vec<(usize, usize)>,
    pub kind: SpaceKind,
}

impl RawSpace {
    /// Matrix given directly by its `a ≤ b` pairs; Hasse edges are taken to
    /// be the non-reflexive pairs with no intermediate element.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Self {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for &(a, b) in pairs {
            leq[a][b] = true;
        }
        let hasse = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| {
                a != b && leq[a][b] && !(0..n).any(|c| c != a && c != b && leq[a][c] && leq[c][b])
            })
            .collect();
        Self {
            labels,
            leq,
            hasse,
            kind: SpaceKind::Explicit,
        }
    }

    pub fn into_space(self) -> Result<FiniteSpace, ValidationReport> {
        let report = validate(&self);
        if !report.is_valid() {
            return Err(report);
        }
        let pairs: Vec<(usize, usize)> = self.hasse.clone();
        Ok(FiniteSpace::from_relation(self.labels, &pairs, self.kind)
            .expect("validated relation is a partial order"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateLabel(String),
    NotReflexive(String),
    NotTransitive(String, String, String),
    NotAntisymmetric(String, String),
    /// A Hasse edge whose endpoints are not related by the matrix.
    HasseOutsideRelation(String, String),
    /// A Hasse edge that is implied by others (not a cover relation).
    HasseNotCover(String, String),
    /// Matrix pair not generated by the Hasse edges.
    ClosureMismatch(String, String),
    IndexOutOfRange(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateLabel(a) => write!(f, "duplicate label `{a}`"),
            Violation::NotReflexive(a) => write!(f, "reflexivity: `{a}` ≤ `{a}` missing"),
            Violation::NotTransitive(a, b, c) => {
                write!(f, "transitivity: `{a}` ≤ `{b}` ≤ `{c}` but not `{a}` ≤ `{c}`")
            }
            Violation::NotAntisymmetric(a, b) => {
                write!(f, "antisymmetry (T0): `{a}` ≤ `{b}` and `{b}` ≤ `{a}`")
            }
            Violation::HasseOutsideRelation(a, b) => {
                write!(f, "hasse edge `{a}` → `{b}` is not in the relation")
            }
            Violation::HasseNotCover(a, b) => {
                write!(f, "hasse edge `{a}` → `{b}` is not a cover relation")
            }
            Violation::ClosureMismatch(a, b) => {
                write!(f, "`{a}` ≤ `{b}` is not generated by the hasse edges")
            }
            Violation::IndexOutOfRange(i) => write!(f, "point index {i} out of range"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Reports every violated axiom of a claimed finite T0 space.
pub fn validate(raw: &RawSpace) -> ValidationReport {
    let n = raw.labels.len();
    let l = |i: usize| raw.labels[i].clone();
    let mut violations = Vec::new();

    let mut seen = HashSet::new();
    for label in &raw.labels {
        if !seen.insert(label) {
            violations.push(Violation::DuplicateLabel(label.clone()));
        }
    }
    if raw.leq.len() != n || raw.leq.iter().any(|row| row.len() != n) {
        violations.push(Violation::IndexOutOfRange(n));
        return ValidationReport { violations };
    }
    let leq = &raw.leq;
    for a in 0..n {
        if !leq[a][a] {
            violations.push(Violation::NotReflexive(l(a)));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !leq[a][b] || a == b {
                continue;
            }
            if a < b && leq[b][a] {
                violations.push(Violation::NotAntisymmetric(l(a), l(b)));
            }
            for c in 0..n {
                if c != b && leq[b][c] && !leq[a][c] {
                    violations.push(Violation::NotTransitive(l(a), l(b), l(c)));
                }
            }
        }
    }

    let mut edges_ok = true;
    for &(a, b) in &raw.hasse {
        if a >= n || b >= n {
            violations.push(Violation::IndexOutOfRange(a.max(b)));
            edges_ok = false;
            continue;
        }
        if !leq[a][b] || a == b {
            violations.push(Violation::HasseOutsideRelation(l(a), l(b)));
        } else if (0..n).any(|c| c != a && c != b && leq[a][c] && leq[c][b]) {
            violations.push(Violation::HasseNotCover(l(a), l(b)));
        }
    }
    if edges_ok {
        // Reflexive-transitive closure of the Hasse edges, compared with the
        // matrix off the diagonal.
        let mut closure: Vec<PointSet> = (0..n).map(|i| PointSet::singleton(n, i)).collect();
        for &(a, b) in &raw.hasse {
            closure[b].insert(a);
        }
        for k in 0..n {
            let row_k = closure[k].clone();
            for row in closure.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a][b] != closure[b].contains(a) {
                    violations.push(Violation::ClosureMismatch(l(a), l(b)));
                }
            }
        }
    }
    ValidationReport { violations }
}

impl FiniteSpace {
    pub fn to_raw(&self) -> RawSpace {
        let n = self.len();
        let leq = (0..n)
            .map(|a| (0..n).map(|b| self.leq(a, b)).collect())
            .collect();
        RawSpace {
            labels: self.labels().to_vec(),
            leq,
            hasse: self.hasse_edges(),
            kind: self.kind().clone(),
        }
    }

    /// Re-checks the stored order against the poset axioms and the stored
    /// Hasse diagram. Always empty for spaces built through this crate.
    pub fn validate(&self) -> ValidationReport {
        validate(&self.to_raw())
    }
}
