use std::fmt;

use thiserror::Error;

use crate::brace::BraceAxiom;
use crate::solution::VerifyReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty domain: sets must have at least one element")]
    EmptyDomain,

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a permutation: {images:?}")]
    NotAPermutation { images: Vec<usize> },

    #[error("index {index} out of range for a set of size {bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("size cap exceeded while computing {what}: needs more than {cap}")]
    SizeCap { what: &'static str, cap: usize },

    #[error("exponent must be at least 2, got {0}")]
    InvalidExponent(usize),

    #[error("size {size} exceeds the supported bound {bound} for {what}")]
    BoundExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("not a solution: {0}")]
    NotASolution(Box<VerifyReport>),

    #[error("brace axiom `{axiom}` fails at {witness:?}")]
    BraceAxiom {
        axiom: BraceAxiom,
        witness: Vec<usize>,
    },

    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    /// Two independent computations of the same object disagree.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

/// Category of a parse failure. Each category maps to a distinct kind of
/// malformed input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    WrongCount { expected: usize, found: usize },
    OutOfRange { value: usize, bound: usize },
    NotBijective,
    UnexpectedEnd,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::WrongCount { expected, found } => {
                write!(f, "wrong count: expected {expected}, found {found}")
            }
            ParseErrorKind::OutOfRange { value, bound } => {
                write!(f, "entry {value} out of range (must be < {bound})")
            }
            ParseErrorKind::NotBijective => write!(f, "row is not a bijection"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
        }
    }
}

impl Error {
    pub(crate) fn parse(line: usize, kind: ParseErrorKind) -> Self {
        Error::Parse { line, kind }
    }
}
