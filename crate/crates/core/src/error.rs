use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown presentation name {0:?}")]
    Name(String),
    #[error("representation {0} has no sign summand; fixed points are not given by a product")]
    NotFixedPointFree(String),
    #[error("no d1 template applies from {from} to {to}: {reason}")]
    Template {
        from: String,
        to: String,
        reason: String,
    },
    #[error("no norm candidate for {0}")]
    NoCandidate(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
