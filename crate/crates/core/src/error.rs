use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}: {msg} (token `{token}`)")]
    Syntax {
        line: usize,
        token: String,
        msg: String,
    },
    #[error("topology error: {0}")]
    Topology(String),
    #[error("disk search exceeded its budget at action bound {bound}")]
    SearchBudgetExceeded { bound: String },
    #[error("degree error: {0}")]
    Degree(String),
    #[error("non-homogeneous monomial: {0}")]
    NonHomogeneous(String),
    #[error("tame automorphism of `{0}` may not reference the generator itself")]
    SelfReference(String),
    #[error("augmentation search space too large: {generators} degree-0 generators (cap {cap})")]
    SearchSpaceTooLarge { generators: usize, cap: usize },
    #[error("grading mismatch: {0}")]
    GradingMismatch(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
