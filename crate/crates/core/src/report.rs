use serde::{Deserialize, Serialize};

/// One violated instance of a law: the law's tag, the quantified arguments
/// in order, and the two sides that should have agreed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: String,
    pub args: Vec<usize>,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Laws that were not evaluated (e.g. too expensive at this size).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<String>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Records a violation when `lhs != rhs`.
    pub fn check(&mut self, law: &str, args: &[usize], lhs: usize, rhs: usize) {
        if lhs != rhs {
            self.violations.push(Violation { law: law.to_string(), args: args.to_vec(), lhs, rhs });
        }
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
        self.skipped.extend(other.skipped);
    }

    pub fn has_law(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn first(&self, law: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.law == law)
    }
}
