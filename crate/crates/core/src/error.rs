use std::fmt;

use thiserror::Error;

use crate::prime::Prime;

/// What went wrong while reading one of the textual formats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    NotPrime(String),
    OutOfRange(String),
    /// A `Prod(...) Z/p^e` factor whose exponent is `inf` on an index prime.
    InfiniteExponent(Prime),
    Invalid(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::NotPrime(n) => write!(f, "not prime: {n}"),
            ParseErrorKind::OutOfRange(n) => write!(f, "number out of supported range: {n}"),
            ParseErrorKind::InfiniteExponent(p) => {
                write!(f, "infinite exponent inside Prod factor at prime {p}")
            }
            ParseErrorKind::Invalid(msg) => write!(f, "{msg}"),
        }
    }
}

/// A parse failure, positioned by byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at position {pos}: {kind}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(pos: usize, kind: ParseErrorKind) -> Self {
        ParseError { pos, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p-adic valuation of 0 is infinite")]
    ValuationOfZero,
    #[error("cannot factorize 0")]
    FactorizeZero,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("prime {0} exceeds the supported range (u64)")]
    PrimeOutOfRange(String),
    #[error("binary parameter must be 0 or 1, got {0}")]
    BadParameter(u8),
    #[error("q = 1 requires every exponent to be finite, but e({0}) = inf")]
    InfiniteExponentWithFiniteChar(String),
    #[error("q = 1 requires finitely many positive exponents, but the default exponent is {0}")]
    InfiniteSupportWithFiniteChar(String),
    #[error("torsion invariants are only defined for q = 0; a q = 1 ring is all torsion")]
    TorsionOfCyclicRing,
    #[error("empty family")]
    EmptyFamily,
    #[error("element arithmetic requires a q = 0 ring")]
    ElementsNeedCharZero,
    #[error("prime {0} divides the denominator but is not invertible (e = inf)")]
    DenominatorNotInvertible(Prime),
    #[error("residue given at prime {0}, where the exponent is not in 1..inf")]
    IllegalResidue(Prime),
    #[error("prime {0} divides the denominator; an explicit residue is required there")]
    MissingResidue(Prime),
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("enumeration of {size} tuples exceeds the guard of {limit}")]
    EnumerationTooLarge { size: u128, limit: u128 },
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
