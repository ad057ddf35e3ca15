use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite entry in input")]
    NonFinite,
    #[error("rank deficient input: residual {residual:.3e} relative to norm {norm:.3e}")]
    RankDeficient { residual: f64, norm: f64 },
    #[error("columns are not orthonormal (max deviation {0:.3e})")]
    NotOrthonormal(f64),
    #[error("matrix is not orthogonal (max deviation {0:.3e})")]
    NotOrthogonal(f64),
    #[error("point {point} is outside the ground set 1..={n_points}")]
    PointOutOfRange { point: usize, n_points: usize },
    #[error("expected a set of size {expected}, got {actual}")]
    WrongCardinality { expected: usize, actual: usize },
    #[error("exhaustive enumeration over {0} points exceeds the cap of 20")]
    EnumerationTooLarge(usize),
    #[error("frame has full rank; the orthogonal complement is trivial")]
    FullRank,
    #[error("too many points: {n} > {limit}")]
    TooManyPoints { n: usize, limit: usize },
    #[error("decomposition is inconsistent with case {0}")]
    InconsistentCase(String),
    #[error("conditioning event has probability {0:.3e}, below the 1e-12 threshold")]
    ZeroProbabilityCondition(f64),
    #[error("point sets overlap")]
    OverlappingSets,
    #[error("the empty set cannot be a generator")]
    EmptyGenerator,
    #[error("point {0} already appears in a generator")]
    PointAlreadyGenerating(usize),
    #[error("ground sets differ: {0} vs {1}")]
    GroundSetMismatch(usize, usize),
    #[error("argument out of domain: {0}")]
    DomainError(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
