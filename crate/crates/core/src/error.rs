use thiserror::Error;

use crate::Rational;

/// Errors raised by the engine.
///
/// The variants are grouped by how a caller is expected to react: structural and
/// parse problems mean the input is malformed, precondition and degenerate-input
/// errors mean a contract was not met, and infeasibility means a constraint system
/// that should have a solution turned out empty.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An interval intersection came out empty. Carries the two bounds that crossed.
    #[error("infeasible: {context}: lower bound {lower} ({lower_source}) exceeds upper bound {upper} ({upper_source})")]
    Infeasible {
        context: String,
        lower: Box<Rational>,
        lower_source: String,
        upper: Box<Rational>,
        upper_source: String,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A postcondition that a theorem guarantees failed to hold.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
