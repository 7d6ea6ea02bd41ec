use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parts must be positive integers, got {0}")]
    NonPositivePart(i64),

    #[error("modulus d must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("diagonal index k must be at least 2, got {0}")]
    InvalidDiagonal(u32),

    #[error("cell ({i}, {j}) does not lie on diagonal {k}")]
    CellOffDiagonal { i: u32, j: u32, k: u32 },

    #[error("part {part} is repeated {multiplicity} times, at least d = {d}")]
    RegularityViolation {
        part: u64,
        multiplicity: u64,
        d: u64,
    },

    #[error("part divisible by d: {part} (d = {d})")]
    DivisibilityViolation { part: u64, d: u64 },

    #[error("a({n}) = {a} but b({n}) = {b} for d = {d}")]
    IdentityViolation {
        n: u64,
        d: u64,
        a: String,
        b: String,
    },

    #[error("n = {n} exceeds the enumeration ceiling {max}")]
    EnumerationCeiling { n: u64, max: u64 },

    #[error("weight overflows 64 bits")]
    Overflow,

    #[error("malformed digit matrix family: {0}")]
    InvalidFamily(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}
