use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be at least 2, got {0}")]
    InvalidRank(usize),

    #[error("index {index} is out of range 0..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("({h1}, {h2}) is not a level-1 slice for n = {n}")]
    InvalidSlice { h1: u32, h2: u32, n: usize },

    #[error("wall rank {found} does not match the expected rank {expected}")]
    RankMismatch { expected: usize, found: usize },

    #[error("node cap of {cap} exceeded")]
    NodeCapExceeded { cap: usize },

    #[error("step budget of {budget} exhausted")]
    StepBudgetExhausted { budget: usize },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    /// Resource exhaustion, as opposed to a logic failure.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::NodeCapExceeded { .. } | Error::StepBudgetExhausted { .. }
        )
    }
}
