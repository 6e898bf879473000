use alloc::string::String;

use crate::coarse::CmtError;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("graph contains a self-loop (edge {edge})")]
    SelfLoop { edge: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has {vertices} vertices, exhaustive search is capped at {cap}")]
    TooLarge { vertices: usize, cap: usize },
    #[error("budget exceeded after {pairs_examined} pairs; best bounds [{lower}, {upper}]")]
    BudgetExceeded {
        lower: usize,
        upper: usize,
        pairs_examined: u64,
    },
    #[error("oracle unavailable: more than {cap} cycles")]
    OracleUnavailable { cap: usize },
    #[error("witness mismatch: {0}")]
    WitnessMismatch(String),
    #[error(transparent)]
    Cmt(#[from] CmtError),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
