use thiserror::Error;

/// Errors produced by the computational core.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vector has length {found}, the form has {expected} variables")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for a form in {n} variables")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("integer overflow while evaluating the form")]
    Overflow,

    #[error("{0} is not a positive root")]
    NotARoot(String),

    #[error("positive root {0} admits no descent to a smaller positive root")]
    NoDescent(String),

    #[error("more than {cap} positive roots generated; the form is probably not weakly positive")]
    RootBudgetExceeded { cap: usize },

    #[error("more than {cap} root sequences generated; the form is probably not weakly positive")]
    SequenceBudgetExceeded { cap: usize },

    #[error("invalid form: {0}")]
    InvalidForm(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
