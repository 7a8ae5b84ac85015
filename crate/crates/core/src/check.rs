use serde::Serialize;

/// Outcome of one named verification, as reported by the certificates and the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// How many instances of the identity were examined.
    pub count: u64,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, count: u64) -> Self {
        Check {
            name: name.into(),
            passed,
            count,
        }
    }

    pub fn all_passed(checks: &[Check]) -> bool {
        checks.iter().all(|c| c.passed)
    }
}
