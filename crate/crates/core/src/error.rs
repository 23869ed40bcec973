use thiserror::Error;

/// Errors raised by the lattice, cone and classification engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The input has the wrong shape (degenerate cone, missing full dimension, ...).
    #[error("structure error: {0}")]
    Structure(String),

    #[error("no witness found inside the box of bound {bound}")]
    BoxTooSmall { bound: u32 },

    /// The simple root lies in the rational span of the weight monoid.
    #[error("not toric: alpha = {combination}")]
    NotToric { combination: String },

    /// A classification result contradicts one of the structure theorems.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    /// An internal cross-check failed; signals a bug or inconsistent input.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}
