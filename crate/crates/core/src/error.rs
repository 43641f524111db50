use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rank {rank} for {kind}")]
    InvalidRank { kind: &'static str, rank: usize },
    #[error("operation requires a {expected} algebra, got {found}")]
    WrongKind {
        expected: &'static str,
        found: &'static str,
    },
    #[error("elements belong to different algebras ({0} vs {1})")]
    MismatchedSpec(String, String),
    #[error("matrix is not in the algebra: {0}")]
    NotInAlgebra(String),
    #[error("degenerate bilinear form")]
    DegenerateForm,
    #[error("invalid site configuration: {0}")]
    InvalidSites(String),
    #[error("site index {index} out of range 1..={sites}")]
    SiteIndex { index: usize, sites: usize },
    #[error("at least two sites are required")]
    TooFewSites,
    #[error("factor count mismatch: {0} vs {1}")]
    FactorMismatch(usize, usize),
    #[error("zero polynomial has no symbol")]
    ZeroInput,
    #[error("z-cutoff {cutoff} is too small for z-order {order}")]
    CutoffTooSmall { cutoff: usize, order: usize },
    #[error("representation dimension {0} exceeds the bound {1}")]
    SizeOverflow(usize, usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
