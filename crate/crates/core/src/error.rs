use alloc::string::String;

use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// `index` is the 1-based size of the first leading minor that is not positive.
    #[error("matrix is not positive definite (leading minor {index})")]
    NotPositiveDefinite { index: usize },

    #[error("quadratic form is singular")]
    SingularForm,

    #[error("Gram matrix is not an even symmetric integer matrix")]
    NotEven,

    #[error("polynomial is not monic")]
    NonMonic,

    #[error("degree {0} outside the supported range 2..=7")]
    DegreeOutOfRange(usize),

    #[error("polynomial is not separable")]
    NotSeparable,

    #[error("polynomial is not totally real")]
    NotTotallyReal,

    #[error("basis does not span an order: {0}")]
    NotAnOrder(String),

    #[error("power order is not maximal at p = {0}; supply an integral basis")]
    NotMaximal(BigInt),

    #[error("discriminant mismatch: computed {computed}, claimed {claimed}")]
    DiscMismatch { computed: BigInt, claimed: BigInt },

    #[error("isometry search supports rank <= 4, got rank {0}")]
    UnsupportedRank(usize),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}
