use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("modulus must be monic of degree {expected}: {detail}")]
    DegreeMismatch { expected: u32, detail: String },
    #[error("field order {0} exceeds the supported maximum 2^20")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("incompatible field tower: {0}")]
    IncompatibleTower(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("{what} has size {size}, above the enumeration guard {limit}")]
    TooLarge {
        what: &'static str,
        size: String,
        limit: String,
    },
    #[error("bad block {n}x{m}: need 1 <= n <= m")]
    BadBlock { n: usize, m: usize },
    #[error("profile mismatch: {0}")]
    ProfileMismatch(String),
    #[error("subspace tuples are not comparable")]
    NotComparable,
    #[error("the code has dimension zero")]
    TrivialCode,
    #[error("the code is not MSRD")]
    NotMsrd,
    #[error("index {index} outside the admissible range {range}")]
    IndexOutOfTheoremRange { index: usize, range: String },
    #[error("distance {d} outside 1..={max}")]
    BadDistance { d: usize, max: usize },
    #[error("no decomposition of d-3 available for d = {0}")]
    DecompositionUnavailable(usize),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("incomplete distribution: {0}")]
    IncompleteDistribution(String),
    #[error("block column sizes are not all equal")]
    UnequalColumnSizes,
    #[error("argument outside the domain: {0}")]
    DomainError(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("length {length} exceeds the maximum MDS length {max}")]
    LengthTooLong { length: usize, max: u64 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}
