use thiserror::Error;

/// Errors produced by construction, algebra, and search operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A matrix that must be square is not.
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    /// A matrix or vector entry is NaN or infinite.
    #[error("matrix or vector contains a non-finite entry")]
    NonFinite,

    /// Two objects that must share a dimension do not.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },

    /// Dimension zero was requested where d >= 1 is required.
    #[error("dimension must be at least 1")]
    ZeroDimension,

    /// A tolerance must be strictly positive.
    #[error("tolerance must be strictly positive, got {tol}")]
    NonPositiveTolerance { tol: f64 },

    /// An operator list that must be nonempty is empty.
    #[error("operator set is empty")]
    EmptySet,

    /// An operation needs at least two operators.
    #[error("need at least 2 operators, got {found}")]
    TooFewOperators { found: usize },

    /// Set kinds passed to a combinator do not match the required pattern.
    #[error("orthogonal-set kinds are inconsistent: {context}")]
    KindMismatch { context: &'static str },

    /// The power-of-two construction only covers d = 2^n.
    #[error("dimension {dim} is not a power of two; use the numerical search for other dimensions")]
    NotPowerOfTwo { dim: usize },

    /// Skew conjugations exist in even dimension only (an antisymmetric
    /// matrix of odd size is singular, so it cannot be anti-unitary).
    #[error("skew conjugations require even dimension, got {dim}")]
    SkewOddDimension { dim: usize },

    /// A requested set size exceeds the d(d±1)/2 bound.
    #[error("requested {requested} mutually orthogonal operators at dim {dim}, but the bound d(d{sign}1)/2 is {bound}")]
    BoundExceeded {
        dim: usize,
        requested: usize,
        bound: usize,
        sign: char,
    },

    /// Takagi factorization requires a complex symmetric input.
    #[error("matrix is not symmetric within tolerance: |M - M^T| = {residual:.3e}")]
    NotSymmetric { residual: f64 },

    /// A search configuration field is out of range.
    #[error("invalid search configuration: {reason}")]
    InvalidConfig { reason: &'static str },

    /// A set failed verification when a verified set was required.
    #[error("operator set failed verification: {context}")]
    VerificationFailed { context: &'static str },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
