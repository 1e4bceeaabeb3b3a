use thiserror::Error;

/// Errors raised by the exact-arithmetic and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient of t^{exponent} requested beyond truncation order {trunc}")]
    BeyondTruncation { exponent: i64, trunc: i64 },

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("interval division by an interval containing zero")]
    IntervalContainsZero,

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("hypergeometric series does not terminate (no non-positive integer upper parameter)")]
    NonTerminating,

    #[error("lower parameter {0} hits a pole before the series terminates")]
    LowerPole(String),

    #[error("enclosure width dominates the residual at n = {n}; shrink eps")]
    WidthDominates { n: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;
