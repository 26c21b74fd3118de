use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown builtin diagram `{0}`")]
    UnknownBuiltin(String),
    #[error("edge multiplicity `{0}` is not one of 2, 3, 4, 6, inf")]
    Multiplicity(String),
    #[error("edge {0}-{1} has multiplicity 4 or 6 but no declared orientation")]
    MissingOrientation(String, String),
    #[error("graph is not of finite type ({0})")]
    NotFinite(String),
    #[error("graph is not of affine type ({0})")]
    NotAffine(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("empty vertex subset")]
    EmptySubset,
    #[error("group order exceeds the cap {0}")]
    Overflow(u64),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
