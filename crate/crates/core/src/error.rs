use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("variable `{0}` is not declared in the ring")]
    UnknownVariable(String),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("variable `{0}` has no binding")]
    UnboundVariable(String),
    #[error("rewrite rule does not lower the exponent of `{0}`")]
    NonTerminatingRule(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("series precondition violated: {0}")]
    Precondition(String),
    #[error("division does not terminate with zero remainder at degree {degree}")]
    InexactDivision { degree: usize },
    #[error("odd-power leakage at degree {degree}: coefficient {coefficient}")]
    ParityLeak { degree: usize, coefficient: String },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("group elements belong to different groups")]
    GroupMismatch,
    #[error("missing table entry for index {0}")]
    MissingIndex(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
