//! Structured results of identity checks.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// One failing instance of an identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Defect {
    /// Short name of the identity that failed.
    pub identity: String,
    /// Basis indices at which it failed.
    pub indices: Vec<usize>,
    /// `lhs - rhs` at those indices.
    pub defect: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    pub defects: Vec<Defect>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        CheckReport { check: check.into(), passed: true, defects: Vec::new() }
    }

    /// Records `diff` as a defect unless it is zero.
    pub fn expect_zero(&mut self, identity: &str, indices: &[usize], diff: Vec<Scalar>) {
        if diff.iter().any(|x| !x.is_zero()) {
            self.passed = false;
            self.defects.push(Defect { identity: identity.to_string(), indices: indices.to_vec(), defect: diff });
        }
    }

    pub fn fail(&mut self, identity: &str, indices: &[usize]) {
        self.passed = false;
        self.defects.push(Defect { identity: identity.to_string(), indices: indices.to_vec(), defect: Vec::new() });
    }

    /// Folds another report in, prefixing its identity names.
    pub fn absorb(&mut self, other: CheckReport) {
        if !other.passed {
            self.passed = false;
        }
        for mut d in other.defects {
            d.identity = format!("{}: {}", other.check, d.identity);
            self.defects.push(d);
        }
    }

    pub fn first_failure(&self) -> Option<&Defect> {
        self.defects.first()
    }
}

pub(crate) fn diff(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}
