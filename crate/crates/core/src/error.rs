//! Error type shared by every module in the crate.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the field, poset, code and
/// transform layers. Resource-cap overruns are separate variants so a
/// frontend can map them to a dedicated exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NonPrimeCharacteristic(u64),
    ReducibleModulus,
    DivisionByZero,
    OutOfRangeElement { value: u64, q: u64 },
    LengthMismatch { left: usize, right: usize },
    CycleDetected,
    OutOfRange(String),
    GroundSetTooLarge { n: usize, max: usize },
    NotAnIdeal,
    IdealCountCapExceeded { cap: usize },
    NotASubgroup,
    NotAutomorphisms,
    PosetMismatch,
    CodeTooLarge { cap: u64 },
    SphereTooLarge { cap: u64 },
    NotMacWilliamsType(String),
    NonIntegralQuotient,
    ZeroGenerator,
    TooLarge(String),
}

impl Error {
    /// True for the variants that signal a configured resource cap.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::IdealCountCapExceeded { .. }
                | Error::CodeTooLarge { .. }
                | Error::SphereTooLarge { .. }
                | Error::TooLarge(_)
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPrimeCharacteristic(p) => write!(f, "{p} is not prime"),
            Error::ReducibleModulus => write!(f, "modulus polynomial is reducible"),
            Error::DivisionByZero => write!(f, "inverse of zero"),
            Error::OutOfRangeElement { value, q } => {
                write!(f, "element {value} out of range for field of size {q}")
            }
            Error::LengthMismatch { left, right } => {
                write!(f, "vector lengths differ: {left} vs {right}")
            }
            Error::CycleDetected => write!(f, "relation closure violates antisymmetry"),
            Error::OutOfRange(what) => write!(f, "out of range: {what}"),
            Error::GroundSetTooLarge { n, max } => {
                write!(f, "ground set of size {n} exceeds supported maximum {max}")
            }
            Error::NotAnIdeal => write!(f, "subset is not an order ideal"),
            Error::IdealCountCapExceeded { cap } => {
                write!(f, "ideal count exceeds cap {cap}")
            }
            Error::NotASubgroup => write!(f, "permutation set is not a subgroup"),
            Error::NotAutomorphisms => write!(f, "permutations are not automorphisms"),
            Error::PosetMismatch => write!(f, "partitions refer to different posets"),
            Error::CodeTooLarge { cap } => write!(f, "codeword count exceeds cap {cap}"),
            Error::SphereTooLarge { cap } => write!(f, "sphere size exceeds cap {cap}"),
            Error::NotMacWilliamsType(witness) => {
                write!(f, "relation is not MacWilliams-type: {witness}")
            }
            Error::NonIntegralQuotient => write!(f, "transform quotient is not integral"),
            Error::ZeroGenerator => write!(f, "generator vector is zero"),
            Error::TooLarge(what) => write!(f, "too large: {what}"),
        }
    }
}

impl std::error::Error for Error {}
