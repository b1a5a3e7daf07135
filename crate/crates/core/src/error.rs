//! Error type shared by every module of the crate.

use alloc::string::String;
use alloc::vec::Vec;

/// Errors reported by scalar arithmetic, chart evaluation and operator
/// construction. Domain errors carry the names of the polynomial factors
/// that vanished so sampling loops can diagnose rejections.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("inverse of a jet with zero base part")]
    JetZeroBase,

    #[error("square root not representable in this scalar backend: {0}")]
    SqrtUnrepresentable(String),

    #[error("degenerate couplings: {0}")]
    DegenerateCouplings(&'static str),

    #[error("{context}: vanishing denominator factor(s) {factors:?}")]
    VanishingDenominator {
        context: &'static str,
        factors: Vec<&'static str>,
    },

    #[error("point is not on {variety} (residual {residual})")]
    OffVariety {
        variety: &'static str,
        residual: String,
    },

    #[error("matrix dimension mismatch: {lhs_rows}x{lhs_cols} vs {rhs_rows}x{rhs_cols}")]
    DimensionMismatch {
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },

    #[error("zero vector is not a projective point")]
    ZeroProjectiveVector,

    #[error("projective points have different dimensions: {0} vs {1}")]
    ProjectiveDimensionMismatch(usize, usize),

    #[error("{kind} polynomial expects {expected} arguments, got {got}")]
    ArityMismatch {
        kind: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("zero twist parameter")]
    ZeroTwist,

    #[error("unitarity product is not a scalar matrix (off-scalar residual {0})")]
    NonScalarProduct(String),

    #[error("R at coincident points is not proportional to the permutator (residual {0})")]
    NotPermutatorShape(String),

    #[error("tangent coefficients violate the first-order variety constraint (residual {0})")]
    TangentConstraintViolated(String),

    #[error("chain of {sites} sites exceeds the {limit}-site budget for this backend")]
    BudgetExceeded { sites: usize, limit: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = core::result::Result<T, Error>;
