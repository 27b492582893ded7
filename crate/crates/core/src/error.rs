//! Error type shared by all arithmetic and classification modules.

/// Errors raised by exact-arithmetic operations and classifiers.
///
/// Precision-related variants are raised instead of guessing whenever a
/// quantity cannot be distinguished at the working precision.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Division by zero in the residue field.
    #[error("division by zero in the residue field")]
    DivisionByZero,

    /// Attempt to invert an element of positive valuation.
    #[error("cannot invert non-unit (valuation {0})")]
    NonUnit(u32),

    /// Exact division by p^k requested on an element of valuation < k.
    #[error("insufficient valuation: need at least {need}, have {have}")]
    InsufficientValuation { need: u32, have: u32 },

    /// The working precision cannot resolve the requested quantity.
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    /// Structurally invalid input (wrong degree, reducible modulus, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// An operation hit a degenerate case it deliberately refuses to handle.
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
