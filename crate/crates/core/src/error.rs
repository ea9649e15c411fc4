use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown quantale `{name}`; valid names: {valid}")]
    UnknownQuantale { name: String, valid: String },

    #[error("carrier of {size} elements exceeds the exhaustive subset bound {bound}; use sampling mode")]
    TooLarge { size: usize, bound: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("{law} violated: {witness}")]
    LawViolation { law: String, witness: String },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("no fixpoint after {rounds} rounds")]
    NoConvergence { rounds: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn violation(law: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::LawViolation {
            law: law.into(),
            witness: witness.into(),
        }
    }
}
