use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("coset enumeration exceeded budget of {0} cosets")]
    BudgetExceeded(usize),
    #[error("no braid found within depth {0}")]
    NotFound(usize),
    #[error("module is not torsion: stacked matrix has rank < 2")]
    RankDeficient,
    #[error("monodromy validation failed: {0}")]
    Validation(String),
    #[error("catalog assembly failed: {0}")]
    AssemblyFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
