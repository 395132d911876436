//! JSON forms of spaces, fences, search reports and exploration reports.
//!
//! Points are referred to by label everywhere except inside fence maps,
//! which list codomain indices in the order of the codomain's `points`.
//! Output is deterministic: same input, same bytes.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homotopy::{Dir, Fence, FenceError, LimitCause};
use crate::search::{
    ExplorationReport, Invariant, Outcome, Reason, SearchReport, Status,
};
use crate::space::{FiniteSpace, PointSet, SpaceError, SpaceKind};

#[derive(Debug, Error)]
pub enum SpaceFileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{context}{message}")]
    Invalid { context: String, message: String },
}

impl SpaceFileError {
    fn at(field: impl Into<String>, message: impl Into<String>) -> Self {
        SpaceFileError::Invalid {
            context: format!("{}: ", field.into()),
            message: message.into(),
        }
    }

    fn in_file(self, path: &Path) -> Self {
        match self {
            SpaceFileError::Invalid { context, message } => SpaceFileError::Invalid {
                context: format!("{}: {context}", path.display()),
                message,
            },
            other => other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceJson {
    pub points: Vec<String>,
    pub hasse: Vec<[String; 2]>,
    #[serde(default = "explicit")]
    pub kind: String,
}

fn explicit() -> String {
    "explicit".to_string()
}

impl SpaceJson {
    pub fn from_space(space: &FiniteSpace) -> Self {
        Self {
            points: space.labels().to_vec(),
            hasse: space
                .hasse_edges()
                .into_iter()
                .map(|(a, b)| [space.label(a).to_string(), space.label(b).to_string()])
                .collect(),
            kind: space.kind().to_string(),
        }
    }

    /// Builds the space: labels must be unique and known, the relation must
    /// be antisymmetric. Redundant (transitive, repeated or reflexive) edges
    /// are accepted and dropped.
    pub fn to_space(&self) -> Result<FiniteSpace, SpaceFileError> {
        let mut index = std::collections::HashMap::new();
        for (i, label) in self.points.iter().enumerate() {
            if index.insert(label.as_str(), i).is_some() {
                return Err(SpaceFileError::at(
                    format!("points[{i}]"),
                    format!("duplicate label {label:?}"),
                ));
            }
        }
        let mut pairs = Vec::with_capacity(self.hasse.len());
        for (i, [a, b]) in self.hasse.iter().enumerate() {
            let lookup = |l: &String| {
                index.get(l.as_str()).copied().ok_or_else(|| {
                    SpaceFileError::at(format!("hasse[{i}]"), format!("unknown point {l:?}"))
                })
            };
            pairs.push((lookup(a)?, lookup(b)?));
        }
        let kind: SpaceKind = self
            .kind
            .parse()
            .map_err(|e: crate::space::KindParseError| SpaceFileError::at("kind", e.to_string()))?;
        FiniteSpace::from_relation(self.points.clone(), &pairs, kind).map_err(|e| match e {
            SpaceError::NotAntisymmetric(..) => SpaceFileError::at("hasse", e.to_string()),
            other => SpaceFileError::at("points", other.to_string()),
        })
    }
}

/// Canonical text of a space file: one Hasse edge per line, edges sorted by
/// point index.
pub fn space_to_string(space: &FiniteSpace) -> String {
    let json = SpaceJson::from_space(space);
    let quote = |s: &str| serde_json::to_string(s).expect("strings serialize");
    let mut out = String::from("{\n  \"points\": [");
    for (i, p) in json.points.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&quote(p));
    }
    out.push_str("],\n  \"hasse\": [");
    for (i, [a, b]) in json.hasse.iter().enumerate() {
        out.push_str(if i == 0 { "\n    " } else { ",\n    " });
        let _ = write!(out, "[{}, {}]", quote(a), quote(b));
    }
    if !json.hasse.is_empty() {
        out.push_str("\n  ");
    }
    let _ = write!(out, "],\n  \"kind\": {}\n}}\n", quote(&json.kind));
    out
}

pub fn parse_space(text: &str) -> Result<FiniteSpace, SpaceFileError> {
    let json: SpaceJson = serde_json::from_str(text).map_err(|e| SpaceFileError::Invalid {
        context: String::new(),
        message: e.to_string(),
    })?;
    json.to_space()
}

pub fn read_space_file(path: &Path) -> Result<FiniteSpace, SpaceFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| SpaceFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_space(&text).map_err(|e| e.in_file(path))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FenceJson {
    pub domain: SpaceJson,
    pub codomain: SpaceJson,
    pub maps: Vec<Vec<usize>>,
    pub dirs: Vec<Dir>,
}

impl FenceJson {
    pub fn from_fence(fence: &Fence) -> Self {
        Self {
            domain: SpaceJson::from_space(fence.domain()),
            codomain: SpaceJson::from_space(fence.codomain()),
            maps: fence.maps().to_vec(),
            dirs: fence.dirs().to_vec(),
        }
    }

    /// Rebuilds and re-verifies the fence.
    pub fn to_fence(&self) -> Result<Fence, FenceFileError> {
        let domain = self.domain.to_space().map_err(FenceFileError::Domain)?;
        let codomain = self.codomain.to_space().map_err(FenceFileError::Codomain)?;
        Ok(Fence::new(
            Arc::new(domain),
            Arc::new(codomain),
            self.maps.clone(),
            self.dirs.clone(),
        )?)
    }
}

#[derive(Debug, Error)]
pub enum FenceFileError {
    #[error("domain: {0}")]
    Domain(SpaceFileError),
    #[error("codomain: {0}")]
    Codomain(SpaceFileError),
    #[error(transparent)]
    Fence(#[from] FenceError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoveringJson {
    pub blocks: Vec<Vec<String>>,
    pub witnesses: Vec<FenceJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefutationJson {
    pub prefix: Vec<usize>,
    pub witness: Vec<String>,
    pub reason: Reason,
    pub count: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LowerJson {
    pub blocks: usize,
    pub assignments: u128,
    pub refuted: Vec<RefutationJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportJson {
    pub invariant: Invariant,
    pub value: usize,
    pub status: Status,
    pub space: SpaceJson,
    pub maximal: Vec<String>,
    pub covering: CoveringJson,
    pub lower: Option<LowerJson>,
}

fn labels_of(space: &FiniteSpace, set: &PointSet) -> Vec<String> {
    space.set_labels(set)
}

impl ReportJson {
    pub fn from_report(report: &SearchReport) -> Self {
        let target = &report.covering.target;
        let maximal: Vec<String> = report
            .maximal
            .iter()
            .map(|&m| target.label(m).to_string())
            .collect();
        Self {
            invariant: report.invariant,
            value: report.value,
            status: report.status,
            space: SpaceJson::from_space(&report.space),
            maximal: maximal.clone(),
            covering: CoveringJson {
                blocks: report
                    .covering
                    .blocks
                    .iter()
                    .map(|b| labels_of(target, b))
                    .collect(),
                witnesses: report
                    .covering
                    .witnesses
                    .iter()
                    .map(FenceJson::from_fence)
                    .collect(),
            },
            lower: report.lower.as_ref().map(|l| LowerJson {
                blocks: l.blocks,
                assignments: l.assignments,
                refuted: l
                    .refuted
                    .iter()
                    .map(|r| RefutationJson {
                        prefix: r.prefix.clone(),
                        witness: r.witness.iter().map(|&i| maximal[i].clone()).collect(),
                        reason: r.reason,
                        count: r.count,
                    })
                    .collect(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum OutcomeJson {
    Certificate { fence: FenceJson },
    Refutation { explored: usize },
    Inconclusive { explored: usize, cause: LimitCause },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExploredSetJson {
    pub name: String,
    pub points: Vec<String>,
    pub open: bool,
    pub obstructed: bool,
    pub outcome: OutcomeJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplorationJson {
    pub n: usize,
    pub antipode_shift: usize,
    pub space: SpaceJson,
    pub sets: Vec<ExploredSetJson>,
    pub covers: bool,
}

impl ExplorationJson {
    pub fn from_report(report: &ExplorationReport) -> Self {
        let square = report.square.square();
        Self {
            n: report.n,
            antipode_shift: report.antipode_shift,
            space: SpaceJson::from_space(report.space()),
            sets: report
                .sets
                .iter()
                .map(|s| ExploredSetJson {
                    name: s.name.clone(),
                    points: labels_of(square, &s.points),
                    open: s.open,
                    obstructed: s.obstructed,
                    outcome: match &s.outcome {
                        Outcome::Certificate(cert) => OutcomeJson::Certificate {
                            fence: FenceJson::from_fence(&cert.fence),
                        },
                        Outcome::Refutation { explored } => OutcomeJson::Refutation {
                            explored: *explored,
                        },
                        Outcome::Inconclusive { explored, cause } => OutcomeJson::Inconclusive {
                            explored: *explored,
                            cause: *cause,
                        },
                    },
                })
                .collect(),
            covers: report.covers,
        }
    }
}

/// Compact JSON followed by a newline.
pub fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("artifacts serialize");
    s.push('\n');
    s
}
