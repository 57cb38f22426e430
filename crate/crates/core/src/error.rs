use std::fmt;

use thiserror::Error;

/// Position-carrying error produced by the text notations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(input: &str, offset: usize, message: impl Into<String>) -> Self {
        let before = &input[..offset.min(input.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty generating set")]
    EmptyGenerators,
    #[error("generators must be positive integers")]
    ZeroGenerator,
    #[error("{a} + {b} = {sum} is a gap but {a} and {b} are members")]
    ClosureViolation { a: u64, b: u64, sum: u64 },
    #[error("invalid conductor {0} for the given small elements")]
    InvalidConductor(u64),
    #[error("{0} is not a member of the semigroup")]
    NotAMember(u64),
    #[error("undefined for the full semigroup of positive integers")]
    UndefinedForFullSemigroup,
    #[error("{what} exceeds the configured bound {bound}")]
    ResourceBound { what: String, bound: u64 },
    #[error("ideal generator {0} is not in the ambient semigroup")]
    NotInAmbient(u64),
    #[error("the ideal equals the ambient semigroup")]
    ImproperIdeal,
    #[error("the ideal belongs to a different ambient semigroup")]
    AmbientMismatch,
    #[error("semigroup is not nilpotent")]
    NotNilpotent,
    #[error("semigroup is not commutative: {a}*{b} != {b}*{a}")]
    NotCommutative { a: String, b: String },
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("presentation enumeration exceeded {0} elements")]
    SizeBoundExceeded(usize),
    #[error("presentation generators do not match the minimal generating system")]
    PresentationMismatch,
    #[error("identity is trivial; no separating quotient exists")]
    TrivialIdentity,
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
