//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("invalid size {size} for family {family}")]
    InvalidSize { family: String, size: usize },
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("point/generator model mismatch")]
    ModelMismatch,
    #[error("matrix does not satisfy the group condition (residual {0:.3e})")]
    NonGroupMatrix(f64),
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("element is not an Euler element of the model")]
    NotEulerElement,
    #[error("group element does not normalize g1(h)")]
    NotNormalizing,
    #[error("involution kind {kind} is incompatible with family {family}")]
    IncompatibleKind { kind: String, family: String },
    #[error("point outside chart domain")]
    OutsideChartDomain,
    #[error("point is not on the hypersurface (residual {0:.3e})")]
    NotOnHypersurface(f64),
    #[error("vector is not tangent at the base point (residual {0:.3e})")]
    NotTangent(f64),
    #[error("endpoints are not causally related")]
    NotCausallyRelated,
    #[error("matrix size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("matrix is not unitary for the form (residual {0:.3e})")]
    NotUnitary(f64),
    #[error("fractional action leaves the chart (c phi + d singular)")]
    ChartSingular,
}

pub type Result<T> = std::result::Result<T, Error>;
