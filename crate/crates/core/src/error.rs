use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("group too large: exceeded cap of {cap} elements after enumerating {partial}")]
    GroupTooLarge { cap: usize, partial: usize },

    #[error("enumeration budget of {budget} candidates exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("element set is not contained in the group")]
    NotSubset,

    #[error("non-diagonal element in a frame-space action")]
    NonDiagonal,

    #[error("singular lattice basis")]
    SingularBasis,

    #[error("unsupported sector: {0}")]
    UnsupportedSector(String),

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}
