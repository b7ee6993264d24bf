use thiserror::Error;

/// Errors shared across the whole crate.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet mismatch: operands are over different alphabets")]
    AlphabetMismatch,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid machine: {0}")]
    InvalidMachine(String),

    #[error("operation requires a finite machine (all labels of length <= 1); use the gjfa variant for general machines")]
    GeneralMachine,

    #[error("expression flavor mismatch: {0}")]
    FlavorMismatch(String),

    #[error("input language is not perm-closed; witness word missing its permutation: {0}")]
    NotPermClosed(String),

    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            pos,
            msg: msg.into(),
        }
    }
}
