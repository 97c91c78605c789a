use thiserror::Error;

/// Errors raised by table construction and the analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table must have at least one element")]
    EmptyTable,

    #[error("table order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },

    #[error("expected {expected} entries for an order-{order} table, found {found}")]
    ShapeMismatch {
        order: usize,
        expected: usize,
        found: usize,
    },

    #[error("entry at row {row}, column {col} is {value}, outside 0..{order}")]
    ClosureViolation {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },

    #[error("associativity fails for ({a}, {b}, {c}): ({a}{b}){c} = {lhs} but {a}({b}{c}) = {rhs}")]
    AssociativityViolation {
        a: usize,
        b: usize,
        c: usize,
        lhs: usize,
        rhs: usize,
    },

    #[error("element {element} is out of range for an order-{order} table")]
    ElementOutOfRange { element: usize, order: usize },

    #[error("the given set is not a two-sided ideal: {witness:?}")]
    NotAnIdeal { witness: (usize, usize) },

    #[error("partition is not a congruence: {x} ~ {y} but translation by {s} separates them")]
    NotACongruence { x: usize, y: usize, s: usize },

    #[error("partitions have different orders ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },

    #[error("order {order} exceeds the configured cap {cap}")]
    SizeLimitExceeded { order: usize, cap: usize },

    #[error("decomposition does not partition the {order} elements of the table")]
    PartitionMismatch { order: usize },

    #[error("decomposition is not T2R-shaped: {reason}")]
    NotT2RShaped { reason: String },

    #[error("invalid identity: {0}")]
    InvalidIdentity(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("checkpoint version {found} is not supported (expected {expected})")]
    CheckpointVersionMismatch { found: u32, expected: u32 },

    #[error("checkpoint describes a different search: {0}")]
    CheckpointMismatch(String),

    #[error("classification gap: weakly exponential Δ-semigroup {table} matches no template ({diagnostics})")]
    ClassificationGap { table: String, diagnostics: String },

    #[error("table {table} matches several templates: {templates:?}")]
    AmbiguousClassification { table: String, templates: Vec<String> },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
