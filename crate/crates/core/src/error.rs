use thiserror::Error;

/// Errors raised by the tree, forest and codec operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("expected a positive rational, got {0}")]
    NotPositive(String),
    #[error("tree parameters must satisfy u >= 1 and v >= 1 (got u={u}, v={v})")]
    InvalidParams { u: u64, v: u64 },
    #[error("malformed rational {0:?}: expected INT or INT/INT")]
    ParseRational(String),
    #[error("malformed continued fraction {0:?}")]
    ParseContinuedFraction(String),
    #[error("continued fraction {0} is not in canonical form")]
    NonCanonical(String),
    #[error("malformed binary code {0:?}: expected a bit string starting with 1")]
    MalformedCode(String),
    #[error("malformed word {0:?}: expected a string over L and R")]
    MalformedWord(String),
    #[error("index {index} is out of range for row {row} (expected 1..=2^{row})")]
    InvalidPosition { row: u64, index: String },
    #[error("{0} has no right neighbour in row {1}")]
    NoSuccessorPosition(String, u64),
    #[error("matrix [[{a},{b}],[{c},{d}]] does not have determinant 1")]
    NotUnimodular { a: String, b: String, c: String, d: String },
    #[error("matrix {0} is not a ({1},{2}) word matrix (requires u | c and v | b)")]
    NotWordMatrix(String, u64, u64),
    #[error("{value} is not an interior row element of any ({u},{v})-tree")]
    NotInteriorElement { value: String, u: u64, v: u64 },
    #[error("{descendant} is not a descendant of {ancestor} in the ({u},{v})-tree")]
    NotDescendant {
        descendant: String,
        ancestor: String,
        u: u64,
        v: u64,
    },
    #[error("{value} is a ({u},{v})-orphan and has no parent")]
    Orphan { value: String, u: u64, v: u64 },
    #[error("run length {0} does not fit in a path word")]
    RunTooLong(String),
    #[error("row {requested} exceeds the configured limit of {limit}")]
    RowLimit { requested: u64, limit: u64 },
    #[error("bound {requested} exceeds the configured limit of {limit}")]
    BoundLimit { requested: u64, limit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
