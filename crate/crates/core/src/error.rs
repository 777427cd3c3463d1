use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A type/rank pair outside the supported range.
    #[error("rank {rank} is not valid for type {rs_type} (need {need})")]
    Range {
        rs_type: char,
        rank: usize,
        need: &'static str,
    },

    /// An argument that violates an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// Estimated work exceeds the configured budget.
    #[error("work estimate {estimate} exceeds budget {budget}")]
    Capacity { estimate: u128, budget: u128 },

    /// The operation has no meaning for this root system type.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The ideal has no sum root; the caller should use the product over the dual partition.
    #[error("ideal reduces to the type-A case")]
    TypeACase,

    /// A closed form was called on an ideal it does not apply to.
    #[error("wrong dispatch: {0}")]
    WrongDispatch(String),

    /// No period candidate reproduced the evaluator.
    #[error("no period among {0:?} fits the evaluator")]
    PeriodExhausted(Vec<usize>),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("parse error: {0}")]
    Parse(String),

    /// Two independent computations disagree.
    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
