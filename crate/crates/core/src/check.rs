//! Pass/fail verdicts with re-checkable witnesses.

use crate::set::ElementSet;
use std::fmt;

/// Outcome of a decision procedure over a finite structure.
///
/// A failing result carries the first violation found when scanning
/// elements in ascending id order, so witnesses are deterministic and
/// can be asserted exactly in tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    violation: Option<Violation>,
}

/// A concrete counterexample to the checked condition.
///
/// Re-evaluating the named condition at `elements`/`sets` must exhibit
/// the failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Stable label of the failed clause.
    pub condition: &'static str,
    /// Element ids involved, in the order the clause quantifies them.
    pub elements: Vec<usize>,
    /// Subsets involved (cones, completion elements, congruence classes).
    pub sets: Vec<ElementSet>,
}

impl CheckResult {
    pub fn pass() -> Self {
        CheckResult { violation: None }
    }

    pub fn fail(condition: &'static str, elements: Vec<usize>, sets: Vec<ElementSet>) -> Self {
        CheckResult {
            violation: Some(Violation {
                condition,
                elements,
                sets,
            }),
        }
    }

    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }

    pub fn violation(&self) -> Option<&Violation> {
        self.violation.as_ref()
    }

    /// Condition tag of the violation, if any.
    pub fn condition(&self) -> Option<&'static str> {
        self.violation.as_ref().map(|v| v.condition)
    }

    /// Witness element ids of the violation, if any.
    pub fn witness_elements(&self) -> &[usize] {
        self.violation
            .as_ref()
            .map(|v| v.elements.as_slice())
            .unwrap_or(&[])
    }

    pub fn witness_sets(&self) -> &[ElementSet] {
        self.violation
            .as_ref()
            .map(|v| v.sets.as_slice())
            .unwrap_or(&[])
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "pass"),
            Some(v) => {
                write!(f, "fail[{}]", v.condition)?;
                if !v.elements.is_empty() {
                    write!(f, " elements={:?}", v.elements)?;
                }
                if !v.sets.is_empty() {
                    write!(f, " sets={:?}", v.sets)?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(CheckResult::pass().to_string(), "pass");
        let r = CheckResult::fail("antitone", vec![0, 1], vec![]);
        assert_eq!(r.to_string(), "fail[antitone] elements=[0, 1]");
        assert!(!r.passed());
        assert_eq!(r.condition(), Some("antitone"));
    }
}
