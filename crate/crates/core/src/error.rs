use thiserror::Error;

use crate::diagram::Move;

/// Errors raised by the weave library.
///
/// Row and column numbers in messages are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeaveError {
    #[error("row {row}, column {col}: entry {value} is not 0 or 1")]
    NonBinary { row: usize, col: usize, value: i64 },

    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        found: usize,
        expected: usize,
    },

    #[error("{axis} count {count} exceeds the supported maximum of {max}")]
    TooLarge {
        axis: &'static str,
        count: usize,
        max: usize,
    },

    #[error("bit vectors have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),

    #[error("move {mv} is out of range for a {m}x{n} diagram")]
    MoveOutOfRange { mv: Move, m: usize, n: usize },

    #[error("illegal move {0}: the exchanged components are not comparable")]
    IllegalMove(Move),

    #[error("operation requires {required}, got a {m}x{n} diagram")]
    Degenerate {
        required: &'static str,
        m: usize,
        n: usize,
    },

    #[error("diagrams have different shapes ({0}x{1} and {2}x{3})")]
    ShapeMismatch(usize, usize, usize, usize),

    #[error("orbit exploration exceeded the budget of {0} states")]
    BudgetExceeded(usize),

    #[error("diagrams are not isotopic")]
    NotIsotopic,

    #[error("parse error at row {row}, column {col}: {msg}")]
    Parse { row: usize, col: usize, msg: String },

    #[error("invalid document: {0}")]
    Document(String),

    #[error("invalid generator parameters: {0}")]
    Generator(String),

    #[error("census of {m}x{n} weaves exceeds the ceiling mn <= {ceiling}")]
    CeilingExceeded { m: usize, n: usize, ceiling: usize },
}

pub type Result<T> = std::result::Result<T, WeaveError>;
