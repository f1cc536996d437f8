//! Validation reports produced by the exhaustive axiom checkers.

use std::fmt;

/// Maximum number of violations a report retains. Checks keep counting past
/// the cap but stop storing witnesses, so garbage input yields bounded output.
pub const VIOLATION_CAP: usize = 100;

/// A single violated axiom instance, with the witness tuple that breaks it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    /// Stable identifier of the rule, e.g. `rack.column-bijective`.
    pub rule: &'static str,
    /// The indices at which the rule fails, in the rule's canonical order.
    pub witness: Vec<usize>,
    /// Human-readable description of the failure.
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}: {}", self.rule, self.witness, self.message)
    }
}

/// Outcome of an exhaustive check: either a certificate of validity or a
/// capped, deterministically ordered list of violations.
///
/// Violations are recorded rule by rule, each rule scanning its witness
/// space in ascending lexicographic order, so identical inputs always
/// produce identical reports.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    violations: Vec<Violation>,
    total: usize,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a violation, storing it only while under [`VIOLATION_CAP`].
    pub fn push(&mut self, rule: &'static str, witness: Vec<usize>, message: String) {
        self.total += 1;
        if self.violations.len() < VIOLATION_CAP {
            self.violations.push(Violation {
                rule,
                witness,
                message,
            });
        }
    }

    /// Absorbs another report; counts accumulate, storage stays capped.
    pub fn merge(&mut self, other: ValidationReport) {
        self.total += other.total;
        for v in other.violations {
            if self.violations.len() < VIOLATION_CAP {
                self.violations.push(v);
            }
        }
    }

    pub fn is_valid(&self) -> bool {
        self.total == 0
    }

    /// Stored violations (at most [`VIOLATION_CAP`]).
    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    /// Total number of violations found, including ones past the cap.
    pub fn total_violations(&self) -> usize {
        self.total
    }

    pub fn truncated(&self) -> bool {
        self.total > self.violations.len()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        writeln!(f, "{} violation(s):", self.total)?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        if self.truncated() {
            writeln!(
                f,
                "  ... {} more not shown",
                self.total - self.violations.len()
            )?;
        }
        Ok(())
    }
}
