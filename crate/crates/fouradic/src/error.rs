use thiserror::Error;

/// Errors produced by parameter validation, parsing and the arithmetic engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("p and q must be distinct")]
    EqualPrimes,

    #[error("gcd(p-1, q-1) = {found}, expected 4 (p = {p}, q = {q})")]
    GcdConstraint { p: u64, q: u64, found: u64 },

    #[error("p * q = {p} * {q} exceeds the supported range")]
    PairTooLarge { p: u64, q: u64 },

    #[error("base must be at least 2, got {0}")]
    BadBase(u64),

    #[error("modulus must be at least 2")]
    BadModulus,

    #[error("logarithm of zero requested")]
    LogOfZero,

    #[error("exponent base {base} is not coprime to {modulus}")]
    NotCoprime { base: u64, modulus: u64 },

    #[error("class index {0} out of range (expected 0..=3)")]
    BadClassIndex(usize),

    #[error("invalid digit character {0:?} (expected '0'..='3')")]
    InvalidDigit(char),

    #[error("sequence must contain at least one digit")]
    EmptySequence,

    #[error("digit value {0} out of range (expected 0..=3)")]
    DigitOutOfRange(u8),

    #[error("declared period {declared} does not match {actual} digits")]
    PeriodMismatch { declared: u64, actual: u64 },

    #[error("period {period} does not equal p*q = {expected} for the attached pair")]
    ProvenanceMismatch { period: u64, expected: u64 },

    #[error("target {target} is not a valid {kind} target mod {modulus}")]
    InvalidTarget {
        kind: &'static str,
        target: u64,
        modulus: u64,
    },

    #[error("no (a, b) with p*q = a^2 + 4b^2 reproduces the brute-force table for pq = {pq}")]
    PartitionNotFound { pq: u64 },

    #[error("{matches} candidate (a, b) pairs reproduce the brute-force table for pq = {pq}")]
    PartitionAmbiguous { pq: u64, matches: usize },

    #[error("table constants are non-integral for (a, b) = ({a}, {b})")]
    NonIntegralConstants { a: i64, b: i64 },

    #[error("gcd factor identity violated: {0}")]
    FactorizationMismatch(String),

    #[error("both gcd factors exceed 1: r1 = {r1}, r2 = {r2}")]
    BothFactorsNontrivial { r1: String, r2: String },

    #[error("malformed structured record: {0}")]
    MalformedRecord(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
