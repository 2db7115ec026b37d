use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Composition (or exp/geom) was asked for an inner series with a
    /// nonzero constant term; the result would need infinitely many terms.
    #[error("inner series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("coefficient index {index} exceeds series order {order}")]
    OrderExceeded { index: usize, order: usize },
    #[error("index ({n}, {k}) lies outside the triangle 0 <= k <= n")]
    IndexOutOfTriangle { n: usize, k: usize },
    #[error("invalid rational {0:?}: expected \"p\" or \"p/q\"")]
    ParseRational(String),
    #[error("invalid distribution {input:?}: {reason}")]
    InvalidDistribution { input: String, reason: String },
    #[error("unknown identity: {0}")]
    UnknownIdentity(String),
    #[error("invalid grid {input:?}: {reason}")]
    ParseGrid { input: String, reason: String },
    #[error("grid does not match identity {id}: {reason}")]
    GridMismatch { id: String, reason: String },
}
