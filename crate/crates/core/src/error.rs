use thiserror::Error;

/// Errors produced by the signature engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid nucleotide {symbol:?} at position {position}")]
    InvalidSymbol { symbol: char, position: usize },

    #[error("sequence of length {len} has no window of length {k}")]
    EmptyWindow { len: usize, k: usize },

    #[error("empty sequence")]
    EmptySequence,

    #[error("order k = {k} outside supported range {min}..={max}")]
    OrderOutOfRange { k: usize, min: usize, max: usize },

    #[error("index {index} out of range for k = {k}")]
    IndexOutOfRange { index: u64, k: usize },

    #[error("cell ({i}, {j}) out of range for k = {k}")]
    CellOutOfRange { k: usize, i: u64, j: u64 },

    #[error("malformed permutation {0:?}")]
    MalformedPermutation(String),

    #[error("permutation {0} has no counterpart among the square symmetries")]
    UnsupportedPermutation(String),

    #[error("vector sums to zero")]
    ZeroMass,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("target length n = {n} must exceed k = {k}")]
    TargetTooShort { n: usize, k: usize },

    #[error("flow imbalance sums to {0}, expected 0")]
    InconsistentImbalance(i64),

    #[error("graph is not Eulerian: {0}")]
    NotEulerian(String),

    #[error("no usable direction after {0} redraws")]
    DegenerateDirection(usize),

    #[error("iterations must be at least 1")]
    NoIterations,

    #[error("FASTA line {line}: {message}")]
    Fasta { line: usize, message: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of the underlying reader or writer rather than of the data.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
