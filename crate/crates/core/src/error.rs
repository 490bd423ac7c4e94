use thiserror::Error;

use crate::metric::CompactSpaceKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("B-lattice generator must have positive real part, got Re(z) = {0}")]
    NonPositiveRealPart(f64),

    #[error("invalid subgroup parameter: {0}")]
    InvalidParameter(String),

    #[error("rational {p}/{q} is not in lowest terms")]
    NotCoprime { p: i64, q: i64 },

    #[error("rational denominator must be positive, got {0}")]
    ZeroDenominator(i64),

    #[error("point does not belong to {0:?}")]
    WrongSpace(CompactSpaceKind),

    #[error("cannot compare samples living in {a:?} and {b:?}")]
    SpaceMismatch {
        a: CompactSpaceKind,
        b: CompactSpaceKind,
    },

    #[error("sampling parameters must be positive (R = {radius}, delta = {step})")]
    BadSampling { radius: f64, step: f64 },

    #[error("underdetermined sequence: {0}")]
    Underdetermined(String),

    #[error("sequence not covered by the convergence tables: {0}")]
    Unsupported(String),

    #[error("slope sequence requires x_n > 0, got {0}")]
    NonPositiveX(f64),

    #[error("negative limit {0} for a nonnegative parameter")]
    NegativeLimit(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
