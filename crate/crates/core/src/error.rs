//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by multiset, code and channel operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An alphabet must contain at least one symbol.
    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,

    /// A symbol outside `1..=q` was supplied.
    #[error("symbol {symbol} is outside the alphabet 1..={q}")]
    SymbolOutOfRange { symbol: usize, q: usize },

    /// Two operands live over different alphabets.
    #[error("alphabet mismatch: q={left} vs q={right}")]
    AlphabetMismatch { left: usize, right: usize },

    /// Two vectors that must have equal length do not.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A multiplicity does not fit the fixed-width counter.
    #[error("multiplicity overflow")]
    Overflow,

    /// The operation requires a set but got a proper multiset.
    #[error("expected a set, but symbol {symbol} has multiplicity {multiplicity}")]
    NotASet { symbol: usize, multiplicity: u32 },

    /// A bit vector entry was not 0 or 1.
    #[error("invalid bit {0:?}")]
    InvalidBit(char),

    /// Codebooks need two or more codewords for a minimum distance to exist.
    #[error("a codebook needs at least 2 codewords, got {0}")]
    TooFewCodewords(usize),

    /// Codewords must be pairwise distinct.
    #[error("codewords {first} and {second} are equal")]
    DuplicateCodeword { first: usize, second: usize },

    /// An inner classical code is malformed.
    #[error("invalid inner code: {0}")]
    InvalidInnerCode(String),

    /// A channel specification is inconsistent or not applicable to the input.
    #[error("invalid channel spec: {0}")]
    InvalidChannelSpec(String),

    /// An exhaustive computation would exceed its work budget.
    #[error("work budget exceeded: {required} items required, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    /// A search found no code with at least two words.
    #[error("no valid codebook: {0}")]
    NoValidCode(String),

    /// A file could not be read or written.
    #[error("{path}: {message}")]
    Io { path: String, message: String },

    /// A textual value could not be parsed.
    #[error("syntax error: {0}")]
    Syntax(String),

    /// A line of a text file could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn syntax(message: impl Into<String>) -> Self {
        Error::Syntax(message.into())
    }

    /// Attaches a 1-based line number to an error raised while reading a file.
    pub(crate) fn at_line(self, line: usize) -> Self {
        match self {
            Error::Parse { .. } => self,
            other => Error::Parse {
                line,
                message: match other {
                    Error::Syntax(m) => m,
                    e => e.to_string(),
                },
            },
        }
    }
}

impl Error {
    pub fn io(path: impl AsRef<std::path::Path>, err: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            message: err.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
