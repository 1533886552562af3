use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VarMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    VarOutOfRange { index: usize, nvars: usize },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        /// Byte offset into the parsed text.
        offset: usize,
        message: String,
    },

    #[error("ideal is not zero-dimensional: no power of variable {var} is a leading term")]
    NotZeroDimensional { var: usize },

    #[error("the origin is not a common zero of the ideal")]
    OriginNotInVariety,

    #[error("ideal is not primary to the origin: variable {var} to the power {power} is not a member")]
    NotPrimary { var: usize, power: u32 },

    #[error("expected {expected} generators for a complete intersection, got {got}")]
    NotCompleteIntersection { expected: usize, got: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("non-finite integrand sample (cycle touches the singular set) at {0}")]
    Singular(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
