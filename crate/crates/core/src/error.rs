use thiserror::Error;

use crate::exact::LpError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("label {0} out of range")]
    InvalidLabel(usize),
    #[error("pair ({0}, {0}) is not a pair of distinct labels")]
    SameLabel(usize),
    #[error("point {0} is not a vertex of the convex hull")]
    NotConvexPosition(usize),
    #[error("affine dimension is {got}, operation requires {required}")]
    AffineDimension { required: usize, got: usize },
    #[error("affine constraint {row} is not satisfied by point {point}")]
    AffineConstraint { row: usize, point: usize },
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("degenerate unit ball: vector lies outside the span of the difference body")]
    DegenerateUnitBall,
    #[error("pair ({0}, {1}) is an edge; the bound is definitional for edges")]
    EdgePair(usize, usize),
    #[error("not subequilateral: edge ({0}, {1}) is shorter than the diameter")]
    NotSubequilateral(usize, usize),
    #[error("lemma certificate could not be built: {0}")]
    CertificateFailure(String),
    #[error("invalid family specification: {0}")]
    InvalidFamily(String),
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("no acceptance criterion {0}; criteria are numbered 1-10")]
    UnknownCriterion(u8),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
