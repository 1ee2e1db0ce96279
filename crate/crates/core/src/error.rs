use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cutoff too large: dimension 2*(cutoff+1)^2 overflows the index type")]
    CutoffTooLarge,

    #[error("cutoff must be at least 1 (got {0})")]
    CutoffTooSmall(i64),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("margin {margin} must be smaller than cutoff {cutoff}")]
    MarginTooLarge { margin: usize, cutoff: usize },

    #[error("empty sector: no basis state with j = {j} fits inside cutoff {cutoff}")]
    EmptySector { j: String, cutoff: usize },

    #[error("eigensolver failed to converge after {iterations} iterations (n = {n})")]
    EigenNonConvergence { iterations: usize, n: usize },

    #[error("sector label {0} is not an integer; this operation needs an integer sector")]
    NonIntegerSector(String),

    #[error("sector label {0} is not a half-integer")]
    NotHalfInteger(String),

    #[error("negative sector j = {0} is reserved for the T realization")]
    NegativeSector(String),

    #[error("half-integer angular momentum l = {0} is not supported here")]
    HalfIntegerAngularMomentum(String),

    #[error("unknown irrep `{irrep}` in table `{group}`")]
    UnknownIrrep { group: String, irrep: String },

    #[error("character table `{group}`: {reason}")]
    BadTable { group: String, reason: String },

    #[error("character table parse error at line {line}: {reason}")]
    TableParse { line: usize, reason: String },

    #[error("non-integral multiplicity {value} for irrep `{irrep}` (distance to integer {err:e} exceeds 1e-6)")]
    NonIntegralMultiplicity {
        irrep: String,
        value: f64,
        err: f64,
    },

    #[error("oracle sector mismatch: oracle was computed for j = {oracle_j}, roots for j = {j}")]
    OracleMismatch { oracle_j: String, j: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
