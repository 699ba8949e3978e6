use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order must be at least 1")]
    ZeroOrder,

    #[error("not a permutation of 1..={n}: {reason}")]
    NotAPermutation { n: usize, reason: String },

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },

    #[error("row {row}, column {col}: symbol {symbol} out of range 1..={n}")]
    SymbolOutOfRange {
        row: usize,
        col: usize,
        symbol: usize,
        n: usize,
    },

    #[error("row {row} repeats symbol {symbol}")]
    RepeatedInRow { row: usize, symbol: usize },

    #[error("column {col} repeats symbol {symbol}")]
    RepeatedInColumn { col: usize, symbol: usize },

    #[error("square is not reduced")]
    NotReduced,

    #[error(
        "rows are not closed under composition: row {left} composed with row {right} is not a row"
    )]
    NotClosed { left: usize, right: usize },

    #[error("{k} is not in the delta set of the square")]
    NotInDelta { k: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(
        "brute-force search is limited to order {limit} (got {n}); pass the override to run anyway"
    )]
    OrderGuard { n: usize, limit: usize },

    #[error("cycle must not be empty")]
    EmptyCycle,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown solver `{name}` (available: {available})")]
    UnknownSolver { name: String, available: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
