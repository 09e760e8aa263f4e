//! Error type shared across the crate.

use std::fmt;

/// Errors reported by field construction, array operations, and sweeps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The given modulus base is not prime.
    NotPrime(u64),
    /// The given integer is not a prime power.
    NotPrimePower(u64),
    /// The requested field or sweep exceeds the configured size ceiling.
    SizeExceeded { requested: u64, ceiling: u64 },
    /// Multiplicative inverse of zero requested.
    ZeroInverse,
    /// An operation defined on the multiplicative group was given zero.
    ZeroElement,
    /// The element does not generate the multiplicative group.
    NotGenerator(u64),
    /// The operation requires odd characteristic.
    EvenCharacteristic(u64),
    /// The prime lies in the wrong residue class for this operation.
    WrongResidueClass(u64),
    /// The divisibility hypothesis needed for subfield projection fails.
    DivisorHypothesisViolated(usize),
    /// Enumeration order exceeds the hard cap.
    OrderTooLarge(usize),
    /// Class-number operations require p >= 7.
    PTooSmall(u64),
    /// The residue class-number formula did not produce a positive integer.
    NonIntegral { p: u64, v: usize, n: usize },
    /// A sequence of values does not form a permutation of 1..=n.
    InvalidPermutation(String),
    /// Malformed textual or JSON input.
    Parse(String),
    /// A parameter violates a documented precondition.
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::NotPrimePower(q) => write!(f, "{q} is not a prime power"),
            Error::SizeExceeded { requested, ceiling } => {
                write!(f, "size {requested} exceeds ceiling {ceiling}")
            }
            Error::ZeroInverse => write!(f, "multiplicative inverse of zero"),
            Error::ZeroElement => write!(f, "operation undefined for the zero element"),
            Error::NotGenerator(code) => {
                write!(f, "element {code} does not generate the multiplicative group")
            }
            Error::EvenCharacteristic(q) => {
                write!(f, "operation requires odd characteristic, got q = {q}")
            }
            Error::WrongResidueClass(p) => {
                write!(f, "prime {p} lies in the wrong residue class for this operation")
            }
            Error::DivisorHypothesisViolated(r) => {
                write!(f, "divisor hypothesis fails for r = {r}")
            }
            Error::OrderTooLarge(n) => write!(f, "order {n} exceeds the enumeration cap"),
            Error::PTooSmall(p) => write!(f, "class-number operations require p >= 7, got {p}"),
            Error::NonIntegral { p, v, n } => write!(
                f,
                "residue class-number formula non-integral for p = {p} (V = {v}, N = {n})"
            ),
            Error::InvalidPermutation(msg) => write!(f, "invalid permutation: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
