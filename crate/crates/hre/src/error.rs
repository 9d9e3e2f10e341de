use thiserror::Error;

/// Crate-wide error type.
///
/// Concept positions in messages are 1-based, matching the indexing used in
/// reports and input files.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must have at least 2 concepts, got {0}")]
    TooSmall(usize),

    #[error("matrix entry ({i},{j}) must be a positive finite number, got {value}")]
    BadEntry { i: usize, j: usize, value: f64 },

    #[error("diagonal entry ({i},{i}) must equal 1, got {value}")]
    BadDiagonal { i: usize, value: f64 },

    #[error("expected {expected} entries for a {n}x{n} matrix, got {got}")]
    BadShape { n: usize, expected: usize, got: usize },

    #[error("expected {expected} labels, got {got}")]
    BadLabels { expected: usize, got: usize },

    #[error("value at position {index} must be a positive finite number, got {value}")]
    BadValue { index: usize, value: f64 },

    #[error("reference value for concept {index} must be a positive finite number, got {value}")]
    BadReference { index: usize, value: f64 },

    #[error("reference concept {index} is out of range 1..={n}")]
    ReferenceOutOfRange { index: usize, n: usize },

    #[error("reference set must be nonempty")]
    EmptyReference,

    #[error("reference set covers all {n} concepts; at least one must stay unknown")]
    NoUnknowns { n: usize },

    #[error("inconsistency index is undefined for n = {0} (requires n > 2)")]
    IndexUndefined(usize),

    #[error(
        "matrix is not reciprocal: m({i},{j})*m({j},{i}) = {product} \
         (see the consistency report for the full violation list)"
    )]
    NotReciprocal { i: usize, j: usize, product: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is singular (pivot {pivot} below threshold at step {step})")]
    Singular { step: usize, pivot: f64 },

    #[error(
        "power iteration did not converge within {max_iter} iterations \
         (last residual {residual})"
    )]
    NoConvergence {
        max_iter: usize,
        residual: f64,
        last: Vec<f64>,
    },

    #[error("logarithm base must be finite and greater than 1, got {0}")]
    BadBase(f64),

    #[error("invalid experiment configuration: {0}")]
    BadConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
