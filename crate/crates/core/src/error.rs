use thiserror::Error;

use crate::counter::Violation;
use crate::tropical::TropicalMatrix;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left_rows}x{left_cols} times {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix shape {rows}x{cols} does not match {len} entries")]
    BadShape { rows: usize, cols: usize, len: usize },

    #[error("matrices in a family must all be {expected}x{expected}, found {found}x{found}")]
    FamilyDimension { expected: usize, found: usize },

    #[error("a matrix family needs at least one generator")]
    EmptyFamily,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),

    #[error("words must be nonempty")]
    EmptyWord,

    #[error("alphabets differ: {0:?} vs {1:?}")]
    AlphabetMismatch(Vec<String>, Vec<String>),

    #[error("{0} requires finite entries")]
    RequiresFiniteEntries(&'static str),

    #[error("closure not guaranteed finite: budget of {limit} elements exhausted")]
    ClosureBudget {
        limit: usize,
        partial: Vec<TropicalMatrix>,
    },

    #[error("{what} exceeded its budget of {limit}")]
    BudgetExceeded { what: &'static str, limit: usize },

    #[error("all entries are -inf")]
    AllBottom,

    #[error("symbol {0:?} is already in the alphabet")]
    SymbolCollision(String),

    #[error("entry {0} is outside {{0, -1}}")]
    EntryNotZeroOrMinusOne(String),

    #[error("expected a 2-letter alphabet, got {0} letters")]
    NfaAlphabet(usize),

    #[error("invalid NFA: {0}")]
    InvalidNfa(String),

    #[error("invalid two-counter machine: {}", format_violations(.0))]
    InvalidMachine(Vec<Violation>),

    #[error("execution trace is empty")]
    EmptyTrace,

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
