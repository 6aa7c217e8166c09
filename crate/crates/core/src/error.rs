use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    /// The slope of the empty word is 0/0.
    #[error("slope of the empty word is undefined")]
    EmptySlope,

    #[error("factor scan for length {length} did not stabilize within {budget} positions")]
    ScanBudget { length: usize, budget: usize },

    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded { what: String, needed: u128, limit: u128 },

    #[error("time budget of {seconds} s exceeded during {stage}")]
    TimeBudget { seconds: f64, stage: String },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for the errors that signal an exhausted resource rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::ScanBudget { .. } | Error::BudgetExceeded { .. } | Error::TimeBudget { .. }
        )
    }
}
