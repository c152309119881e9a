use alloc::string::String;

/// Errors raised by the analytic and combinatorial kernels.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The power series has a zero constant term.
    #[error("not invertible as power series")]
    NotInvertible,

    /// The numerical invariants do not describe a function field.
    #[error("invalid field model: {0}")]
    InvalidModel(String),

    /// A derived quantity that must be a nonnegative integer was not.
    #[error("model inconsistency: {0}")]
    Inconsistent(String),

    /// A request the library deliberately does not answer.
    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// Bad arguments to an operation.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Numerical separation failed at the working precision.
    #[error("precision error: {0}")]
    Precision(String),

    /// Enumeration would exceed the configured budget.
    #[error("enumeration budget of {budget} representatives exceeded")]
    BudgetExceeded { budget: u64 },
}

pub type Result<T> = core::result::Result<T, Error>;
