use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input supplied by the caller.
    #[error("input error: {0}")]
    Input(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// The degree-one piece is empty, so no Toledo data exists.
    #[error("empty g1: {0}")]
    EmptyG1(String),
    #[error("orbit not certified open")]
    NotCertified,
    #[error("curvature undefined: Toledo rank is zero")]
    UndefinedCurvature,
    /// An identity that must hold by theory failed; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
