use thiserror::Error;

use crate::segment::Segment;

/// Errors produced by the combinatorial operations.
///
/// Segments inside error values are reported raw (line index and endpoints);
/// callers holding a [`LineTable`](crate::LineTable) can render them with
/// [`crate::notation::print_segment`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty segment [{a},{b}] is not a valid segment")]
    EmptySegment { a: i64, b: i64 },

    #[error("segments {0:?} and {1:?} are not linked")]
    NotLinked(Segment, Segment),

    #[error("segment {0:?} is not in the multisegment")]
    SubtractUnderflow(Segment),

    #[error("unknown cuspidal line `{0}`")]
    UnknownLine(String),

    #[error("invalid line table: {0}")]
    LineTable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("node budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },

    #[error("brute-force bound exceeded: {size} left indices, bound {bound}")]
    BruteBound { size: usize, bound: usize },

    #[error("invalid window: {0}")]
    Window(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("index {0} out of range")]
    OutOfRange(i64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
