use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the library.
///
/// Row and column indices carried by errors are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NotSquare: {0}")]
    NotSquare(String),
    #[error("RowDuplicate row {row} symbol {symbol}")]
    RowDuplicate { row: usize, symbol: u32 },
    #[error("ColDuplicate col {col} symbol {symbol}")]
    ColDuplicate { col: usize, symbol: u32 },
    #[error("OutOfRange: cell ({row}, {col}) outside order {n}")]
    OutOfRange { row: usize, col: usize, n: usize },
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("PreconditionViolated: {0}")]
    PreconditionViolated(String),
    #[error("AssertionFailure: {0}")]
    AssertionFailure(String),
    #[error("ResourceLimit: {0}")]
    ResourceLimit(String),
    #[error("InfeasibleParams: {0}")]
    InfeasibleParams(String),
    #[error("NotRegular: {0}")]
    NotRegular(String),
    #[error("NotProper: edges {first:?} and {second:?} share a vertex and color {color}")]
    NotProper {
        first: (usize, usize),
        second: (usize, usize),
        color: u32,
    },
    #[error("OddVertices: a perfect matching needs an even vertex count, got {0}")]
    OddVertices(usize),
    #[error("DegenerateExtraction: edge ({0}, {1}) produced twice")]
    DegenerateExtraction(usize, usize),
}

impl Error {
    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }
}
