//! Error types for model loading, reduction and local expansion.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// A single violated claim found while validating a model data file.
/// Loading collects every issue before failing, so one corrupt file is
/// diagnosed completely in a single pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    /// Which object the violation is attached to, e.g. `cusp 1` or `point P3`.
    pub subject: String,
    /// What failed, with exact residuals or mismatched values when available.
    pub detail: String,
}

impl std::fmt::Display for Issue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.subject, self.detail)
    }
}

/// Why a prime was refused by the good-reduction screen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    /// An equation vanishes or drops degree mod p.
    EquationDegenerate { index: usize },
    /// An involution matrix does not stay a projective involution mod p.
    InvolutionDegenerate { name: String },
    /// A point count over F_{p^k} violates the genus-g Weil bound.
    CountBound { k: usize, count: u64, bound: u64 },
    /// The singular locus is nonempty; a witness point is reported when a
    /// small search finds one.
    Singular { chart: usize, witness: Option<String> },
    /// The hyperelliptic model degenerates (p = 2 or discriminant zero).
    HyperellipticDegenerate { why: String },
    /// The screen could not certify either verdict within its work caps.
    Inconclusive { why: String },
}

impl std::fmt::Display for RejectReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RejectReason::EquationDegenerate { index } => {
                write!(f, "equation {index} degenerates mod p")
            }
            RejectReason::InvolutionDegenerate { name } => {
                write!(f, "involution {name} degenerates mod p")
            }
            RejectReason::CountBound { k, count, bound } => {
                write!(f, "count over degree-{k} field reaches {count}, bound {bound}")
            }
            RejectReason::Singular { chart, witness } => match witness {
                Some(w) => write!(f, "singular point {w} in chart {chart}"),
                None => write!(f, "nonempty singular locus in chart {chart}"),
            },
            RejectReason::HyperellipticDegenerate { why } => {
                write!(f, "hyperelliptic model degenerates: {why}")
            }
            RejectReason::Inconclusive { why } => write!(f, "screen inconclusive: {why}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("level {level}: model data failed validation ({} issue(s)):\n{}",
        .issues.len(),
        .issues.iter().map(|i| format!("  - {i}")).collect::<Vec<_>>().join("\n"))]
    Validation { level: u32, issues: Vec<Issue> },

    #[error("no model data for level {0}")]
    UnknownLevel(u32),

    #[error("malformed model data: {0}")]
    Data(String),

    #[error("cannot parse {what}: {text:?}")]
    Parse { what: &'static str, text: String },

    #[error("level {level} is rejected at p = {p}: {reason}")]
    BadReduction { level: u32, p: u64, reason: RejectReason },

    #[error("point reduction failed: {0}")]
    PointReduction(String),

    #[error("enumeration failed: {0}")]
    Enumeration(String),

    #[error("local expansion failed: {0}")]
    Expansion(String),

    #[error(transparent)]
    Exact(#[from] exactalg::Error),
}
