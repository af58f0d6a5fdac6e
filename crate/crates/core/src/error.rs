use thiserror::Error;

/// Errors raised by the library.
///
/// The variants fall into a few broad classes (see [`Error::class`]) so that
/// front ends can map them to distinct exit statuses.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix shape {rows}x{cols} does not match {len} entries")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        len: usize,
    },

    #[error("matrix must have at least one row")]
    NoRows,

    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("({i},{j}) is not a positive root of A_{n}: need 1 <= i < j <= {}", n + 1)]
    InvalidRoot { i: usize, j: usize, n: usize },

    #[error("tuple has {got} roots, expected n+1 = {expected}")]
    WrongTupleLength { expected: usize, got: usize },

    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("{what} = {value} exceeds the configured cap {cap}{hint}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
        hint: &'static str,
    },

    #[error("matrix has rank {rank}, expected full row rank {rows}")]
    RankDeficient { rank: usize, rows: usize },

    #[error("shift set list has {got} entries, expected one per positive root ({expected})")]
    ShiftSetCount { expected: usize, got: usize },

    #[error("shift set for root {root} is empty")]
    EmptyShiftSet { root: String },

    #[error("residue class {residue} mod {period}: {detail}")]
    Fit {
        residue: u64,
        period: u64,
        detail: String,
    },
}

/// Coarse grouping of [`Error`] variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed input.
    Usage,
    /// A mathematical precondition does not hold.
    Hypothesis,
    /// An enumeration would exceed its configured size cap.
    Cap,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::CapExceeded { .. } => ErrorClass::Cap,
            Error::Parse { .. } | Error::ShapeMismatch { .. } | Error::NoRows => ErrorClass::Usage,
            Error::ShiftSetCount { .. } | Error::EmptyShiftSet { .. } => ErrorClass::Usage,
            _ => ErrorClass::Hypothesis,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
