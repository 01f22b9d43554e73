use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value {value} appears more than once")]
    DuplicateValue { value: i64 },
    #[error("value {value} is outside 1..={n}")]
    ValueOutOfRange { value: i64, n: usize },
    #[error("could not parse {0:?} as a permutation")]
    ParsePermutation(String),
    #[error("could not parse {0:?} as an up/down word (letters must be U or D)")]
    ParseWord(String),
    #[error("an up/down pattern must have at least one letter")]
    EmptyPattern,
    #[error("up/down word needs at least one value")]
    EmptySequence,
    #[error("pattern length {len} exceeds the exhaustive containment limit of 4")]
    PatternTooLong { len: usize },
    #[error("{what}: n = {n} exceeds the limit {limit}")]
    GuardExceeded { what: &'static str, n: usize, limit: usize },
    #[error("prefix offset {offset} must be smaller than the pattern length {len}")]
    OffsetOutOfRange { offset: usize, len: usize },
    #[error("permutation contains the pattern {0}")]
    ContainsPattern(String),
    #[error("{0} is not a pattern of length three")]
    NotLengthThree(String),
    #[error("no pattern table for length {0}")]
    UnsupportedLength(usize),
    #[error("invalid Dyck path: {0}")]
    InvalidDyckPath(&'static str),
    #[error("series division by a series with zero constant term")]
    ZeroConstantTerm,
    #[error("series are in different coefficient modes")]
    ModeMismatch,
    #[error("dividing by t^{0} would drop a nonzero coefficient")]
    ShiftUnderflow(usize),
    #[error("index {index} is out of range (table holds 0..={max})")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
