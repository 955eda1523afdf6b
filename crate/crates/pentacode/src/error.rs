//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Two operators of different qubit counts were combined.
    #[error("operator length mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A request exceeded the fixed-size capacity of the representation.
    #[error("capacity exceeded: requested {requested}, maximum {max}")]
    Capacity { requested: usize, max: usize },

    /// Text input did not match the expected grammar.
    #[error("parse error: {0}")]
    Parse(String),

    /// A code specification violated a structural requirement.
    #[error("invalid code: {0}")]
    InvalidCode(String),

    /// An input did not have the sparsity/sign pattern an operation requires.
    #[error("pattern violation: {0}")]
    PatternViolation(String),

    /// A closed-form result was requested outside its certified regime.
    #[error("out of regime: {0}")]
    OutOfRegime(String),

    /// Two routes to the same quantity disagreed beyond tolerance; indicates
    /// a transcription bug rather than a user error.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}
