use thiserror::Error;

use crate::fraction::Fraction;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator must be positive")]
    ZeroDenominator,

    #[error("{num}/{den} lies outside [0, 1]")]
    OutOfUnitInterval { num: u64, den: u64 },

    #[error("cannot parse {input:?} as a rational in [0, 1]: {reason}")]
    Parse { input: String, reason: String },

    #[error("{prev} and {cur} are not consecutive Farey neighbors (q*a' - a*q' != 1)")]
    NotConsecutive { prev: Fraction, cur: Fraction },

    #[error("1/1 is the last element of every Farey sequence and has no successor")]
    NoSuccessor,

    #[error("expected {left} < {right}")]
    NotIncreasing { left: Fraction, right: Fraction },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} = {requested} exceeds the enumeration cap {cap}; lower Q or raise the cap")]
    CapExceeded {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    #[error("sieve was built to {limit}, but {requested} was requested")]
    BeyondSieve { limit: u64, requested: u64 },

    #[error("{u} has no inverse modulo {modulus}")]
    NotInvertible { u: u64, modulus: u64 },
}
