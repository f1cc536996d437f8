//! Error types shared across the crate.

use crate::report::ValidationReport;
use thiserror::Error;

/// Structural errors raised when assembling algebra tables.
///
/// These cover malformed data only (wrong dimensions, out-of-range entries).
/// Axiom failures are not errors; they are reported by the checkers.
#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("malformed table: {0}")]
    MalformedTable(String),
}

/// Errors raised by the construction builders.
#[derive(Debug, Error)]
pub enum ConstructionError {
    /// An input datum violates one of its defining conditions.
    #[error("condition ({condition}) violated at witness {witness:?}: {message}")]
    ConditionViolated {
        condition: &'static str,
        witness: Vec<usize>,
        message: String,
    },
    /// The mandatory post-hoc axiom check on a built structure failed.
    #[error("built structure fails its axiom check:\n{0}")]
    AxiomCheckFailed(ValidationReport),
    /// The input satisfied the stated conditions yet broke an internal step
    /// of the reconstruction. Surfacing this loudly is the point: it would
    /// falsify either the construction or the condition checker.
    #[error("internal lemma `{lemma}` violated at witness {witness:?}: {message}")]
    LemmaViolated {
        lemma: &'static str,
        witness: Vec<usize>,
        message: String,
    },
    #[error(transparent)]
    Malformed(#[from] AlgebraError),
}

/// Errors raised by coloring operations.
#[derive(Debug, Error)]
pub enum ColoringError {
    #[error("brute-force domain too large: |X|^arcs = {0} exceeds the 10^8 guard")]
    TooLarge(f64),
    #[error("arc {0} does not lie on a circle component (component contains a vertex)")]
    NotCircleComponent(usize),
    #[error("assignment length {got} does not match arc count {want}")]
    AssignmentMismatch { got: usize, want: usize },
    #[error("rack operation columns are not invertible; negative crossings undefined")]
    NotInvertible,
}

/// Errors raised when applying a Reidemeister or inverse move.
#[derive(Debug, Error)]
pub enum MoveError {
    #[error("site does not match diagram ({kind}): {reason}")]
    PatternMismatch { kind: &'static str, reason: String },
    #[error("arc {0} does not lie on a circle component (component contains a vertex)")]
    NotCircleComponent(usize),
    #[error("rewritten diagram failed validation (internal error):\n{0}")]
    InvalidResult(ValidationReport),
}
