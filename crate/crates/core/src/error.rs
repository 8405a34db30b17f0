use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },

    #[error("expected a positive integer, got {0}")]
    NonPositive(BigInt),

    #[error("factorization of {0} did not finish within the iteration cap")]
    FactorizationTimeout(BigInt),

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("columns indexed by the basis are linearly dependent")]
    SingularBasis,

    #[error("delta must be at least 2, got {0}")]
    InvalidDelta(BigInt),

    #[error("{n} columns exceed the exhaustive-search cap of {cap}")]
    TooLargeForExhaustive { n: usize, cap: usize },

    #[error("target vector is not in the cone generated by the columns")]
    NotInCone,

    #[error("columns do not positively span the ambient space")]
    NotPositivelySpanning,

    #[error("knapsack vector must be nonzero and contain both signs")]
    NoSignMix,

    #[error("kernel-vector hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("infeasible input: {0}")]
    InfeasibleInput(String),

    #[error("right-hand side {value} exceeds the search cap {cap}")]
    CapExceeded { value: BigInt, cap: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
