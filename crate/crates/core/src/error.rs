use thiserror::Error;

use crate::closure::LevelProfile;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operation is undefined on the empty word")]
    EmptyWord,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("symbol {symbol} is outside an alphabet of size {size}")]
    InvalidSymbol { symbol: usize, size: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("class sequence is inconsistent at window {position}")]
    InconsistentPhi { position: usize },

    #[error("state budget exceeded with {frontier} words pending")]
    BudgetExceeded {
        frontier: usize,
        /// Levels that were fully enumerated before the guard tripped.
        completed: Box<LevelProfile>,
    },

    #[error("exact integer overflow in {0}")]
    Overflow(&'static str),

    #[error("power iteration did not converge within {0} iterations")]
    NonConvergence(usize),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
