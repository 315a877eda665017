//! Verification reports shared by every suite.

use serde::{Deserialize, Serialize};

use crate::matrix::Matrix;
use crate::rational::Rational;

/// One violated identity: which relation, at which indices, and the squared
/// Frobenius norm of `lhs - rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub relation: String,
    pub indices: Vec<usize>,
    pub residual: Rational,
}

/// A recorded quantity that is reported but not asserted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation {
    pub label: String,
    pub indices: Vec<usize>,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub passed: bool,
    /// Number of identities evaluated.
    pub checked: usize,
    pub failures: Vec<Failure>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub observations: Vec<Observation>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport { suite: suite.into(), passed: true, checked: 0, failures: Vec::new(), observations: Vec::new() }
    }

    /// Records `lhs == rhs`; returns whether it held.
    pub fn check_eq(&mut self, relation: &str, indices: &[usize], lhs: &Matrix, rhs: &Matrix) -> bool {
        let diff = lhs - rhs;
        self.check_zero(relation, indices, &diff)
    }

    pub fn check_zero(&mut self, relation: &str, indices: &[usize], diff: &Matrix) -> bool {
        self.checked += 1;
        if diff.is_zero() {
            return true;
        }
        self.fail(relation, indices, diff.frobenius_sq());
        false
    }

    /// Records a scalar identity `lhs == rhs`; the residual is `(lhs - rhs)²`.
    pub fn check_scalar(&mut self, relation: &str, indices: &[usize], lhs: Rational, rhs: Rational) -> bool {
        self.checked += 1;
        let d = lhs - rhs;
        if d.is_zero() {
            return true;
        }
        self.fail(relation, indices, d * d);
        false
    }

    pub fn check_flag(&mut self, relation: &str, indices: &[usize], ok: bool) -> bool {
        self.checked += 1;
        if !ok {
            self.fail(relation, indices, Rational::ONE);
        }
        ok
    }

    pub fn fail(&mut self, relation: &str, indices: &[usize], residual: Rational) {
        self.passed = false;
        self.failures.push(Failure { relation: relation.to_string(), indices: indices.to_vec(), residual });
    }

    pub fn observe(&mut self, label: &str, indices: &[usize], value: Rational) {
        self.observations.push(Observation { label: label.to_string(), indices: indices.to_vec(), value });
    }

    /// Folds another report's checks and failures into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.checked += other.checked;
        self.passed &= other.passed;
        self.failures.extend(other.failures);
        self.observations.extend(other.observations);
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    #[test]
    fn passed_iff_no_failures() {
        let mut r = VerificationReport::new("t");
        let a = Matrix::identity(2);
        assert!(r.check_eq("same", &[], &a, &a));
        assert!(r.passed && r.failures.is_empty());
        assert!(!r.check_eq("diff", &[1], &a, &a.scale(qi(2))));
        assert!(!r.passed);
        assert_eq!(r.failures[0].residual, qi(2));
        assert_eq!(r.checked, 2);
    }
}
