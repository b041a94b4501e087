use thiserror::Error;

use crate::matroid::SubsetMask;

/// Errors shared by all modules of the toolkit.
///
/// Mathematical "no" answers (a candidate that is not an adjoint, a
/// non-isomorphic pair) are *not* errors; operations return explicit
/// verdicts for those. `Error` covers misuse, resource caps, and internal
/// consistency failures.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{0} is not a prime in 2..=251")]
    NotPrime(u16),
    #[error("zero has no inverse modulo {0}")]
    NoInverse(u16),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not a matroid: exchange fails for bases {0} and {1}")]
    NotMatroid(SubsetMask, SubsetMask),
    #[error("matroid must be simple: {0}")]
    NotSimple(String),
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    /// A property that is guaranteed to hold failed on a concrete input.
    /// Refutations are the toolkit's primary scientific signal and are
    /// kept distinct from misuse and resource errors.
    #[error("refutation: {0}")]
    Refuted(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
