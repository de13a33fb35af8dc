use thiserror::Error;

pub type Result<T> = std::result::Result<T, BrigError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrigError {
    /// An operation was called outside its domain (wrong classification,
    /// zero coefficients, negative discriminant, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("mismatched radicands: {left} vs {right}")]
    MismatchedRadicand { left: String, right: String },

    /// A zero-at-k construction would produce the all-zero sequence.
    #[error("degenerate construction: {0}")]
    DegenerateConstruction(String),

    /// An internal consistency check failed. Seeing this means either a bug
    /// or a counterexample to one of the uniqueness statements.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),
}

impl BrigError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        BrigError::Domain(msg.into())
    }
}
