//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by construction, composition, analysis and simulation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrError {
    #[error("code has no nodes")]
    Empty,
    #[error("node {node} contains symbol {symbol} outside 0..{theta}")]
    SymbolOutOfRange { node: usize, symbol: usize, theta: usize },
    #[error("node {node} repeats symbol {symbol}")]
    RepeatedSymbol { node: usize, symbol: usize },
    #[error("node {node} has {size} symbols, expected {expected}")]
    NonUniformNodeSize { node: usize, size: usize, expected: usize },
    #[error("symbol {symbol} is stored {count} times, expected {expected}")]
    NonUniformRepetition { symbol: usize, count: usize, expected: usize },
    #[error("symbol {0} is not stored on any node")]
    UnusedSymbol(usize),
    #[error("invalid resolution: {0}")]
    InvalidResolution(String),
    #[error("code has no resolution")]
    NoResolution,
    #[error("class index {0} is out of range or repeated")]
    BadIndex(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field of order {0} is too large for table arithmetic")]
    FieldTooLarge(u64),
    #[error("requested {requested} parallel classes, at most {max} available")]
    TooManyClasses { requested: usize, max: usize },
    #[error("{what} = {value} does not satisfy the required congruence")]
    BadOrder { what: &'static str, value: usize },
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph degree {0} is below 2")]
    DegreeTooSmall(usize),
    #[error("{0} does not divide {1}")]
    NonDivisible(usize, usize),
    #[error("not a Steiner 2-design: {0}")]
    NotSteiner(String),
    #[error("unknown catalog entry {0}")]
    UnknownCatalog(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("property violation: {0}")]
    PropertyViolation(String),
    #[error("node {node} has no repair with d = {d}, beta = {beta}")]
    NotRecoverable { node: usize, d: usize, beta: usize },
    #[error("nodes {stuck:?} could not be repaired")]
    UnrepairableFailure { stuck: Vec<usize> },
    #[error("only {available} distinct symbols available, {needed} needed")]
    InsufficientSymbols { available: usize, needed: usize },
    #[error("file size mismatch: {0}")]
    FileSizeMismatch(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, FrError>;

impl From<serde_json::Error> for FrError {
    fn from(e: serde_json::Error) -> Self {
        FrError::Parse(e.to_string())
    }
}

impl From<std::io::Error> for FrError {
    fn from(e: std::io::Error) -> Self {
        FrError::Io(e.to_string())
    }
}
