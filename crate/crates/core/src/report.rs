//! Structured pass/fail records for randomized and exact checks.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub check: String,
    pub passed: bool,
    /// Largest residual seen; for one-sided conditions this is the size of
    /// the worst violation (zero when satisfied).
    pub max_residual: f64,
    pub tol: f64,
    /// Data for the worst case observed, e.g. the offending coordinates.
    pub witness: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerificationReport {
    pub subject: String,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        Self {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| c.max_residual)
            .fold(0.0, f64::max)
    }

    pub fn get(&self, check: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check == check)
    }

    pub fn push(&mut self, c: CheckResult) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// Records a boolean fact with no residual.
    pub fn push_flag(&mut self, check: &str, ok: bool, witness: Vec<f64>) {
        self.checks.push(CheckResult {
            check: check.to_string(),
            passed: ok,
            max_residual: 0.0,
            tol: 0.0,
            witness,
        });
    }
}

/// Running maximum of residuals for one check.
#[derive(Debug, Clone)]
pub(crate) struct Tracker {
    check: &'static str,
    tol: f64,
    worst: f64,
    witness: Vec<f64>,
}

impl Tracker {
    pub(crate) fn new(check: &'static str, tol: f64) -> Self {
        Self {
            check,
            tol,
            worst: 0.0,
            witness: Vec::new(),
        }
    }

    pub(crate) fn observe(&mut self, residual: f64, witness: impl FnOnce() -> Vec<f64>) {
        // NaN must fail the check.
        if residual.is_nan() || residual > self.worst {
            self.worst = if residual.is_nan() {
                f64::INFINITY
            } else {
                residual
            };
            self.witness = witness();
        }
    }

    pub(crate) fn finish(self) -> CheckResult {
        CheckResult {
            check: self.check.to_string(),
            passed: self.worst <= self.tol,
            max_residual: self.worst,
            tol: self.tol,
            witness: self.witness,
        }
    }
}
