use thiserror::Error;

use crate::liealg::JacobiViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("Jacobi identity fails on {} basis triple(s), first at {:?}", .0.len(), .0.first().map(|v| v.triple))]
    Jacobi(Vec<JacobiViolation>),

    #[error("claim `{claim}` does not hold: {detail}")]
    ClaimFailed { claim: String, detail: String },

    #[error("subspace is not an ideal")]
    NotAnIdeal,

    #[error("subspace is not abelian")]
    NotAbelian,

    #[error("expected codimension {expected}, found {found}")]
    WrongCodimension { expected: usize, found: usize },

    #[error("linear map is not injective (rank {rank} < {dim})")]
    NotInjective { rank: usize, dim: usize },

    #[error("bracket not preserved on basis pair ({i}, {j}); residual {residual}")]
    NotHomomorphism { i: usize, j: usize, residual: String },

    #[error("operator family is not closed under commutator")]
    NotClosed,

    #[error("operator {index} is not a derivation")]
    NotDerivation { index: usize },

    #[error("requires dimension greater than 1, found {0}")]
    DimensionTooSmall(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures caused by the input rather than by the toolkit.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}
