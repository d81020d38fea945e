//! Structured pass/fail records for identity checks.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    /// The identity being checked, written out as a formula.
    pub identity: String,
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub margin: Option<usize>,
    pub dims: Vec<usize>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a measured residual. A NaN residual never passes.
    pub fn check(
        &mut self,
        name: impl Into<String>,
        identity: impl Into<String>,
        residual: f64,
        tolerance: f64,
        margin: Option<usize>,
        dims: &[usize],
    ) -> &CheckRecord {
        let status = if residual <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        self.records.push(CheckRecord {
            name: name.into(),
            identity: identity.into(),
            residual: Some(residual),
            tolerance,
            margin,
            dims: dims.to_vec(),
            status,
            reason: None,
        });
        self.records.last().unwrap()
    }

    pub fn skip(
        &mut self,
        name: impl Into<String>,
        identity: impl Into<String>,
        tolerance: f64,
        dims: &[usize],
        reason: impl Into<String>,
    ) {
        self.records.push(CheckRecord {
            name: name.into(),
            identity: identity.into(),
            residual: None,
            tolerance,
            margin: None,
            dims: dims.to_vec(),
            status: Status::Skipped,
            reason: Some(reason.into()),
        });
    }

    /// Records a check that could not be evaluated because of an error.
    pub fn error(
        &mut self,
        name: impl Into<String>,
        identity: impl Into<String>,
        tolerance: f64,
        dims: &[usize],
        reason: impl Into<String>,
    ) {
        self.records.push(CheckRecord {
            name: name.into(),
            identity: identity.into(),
            residual: None,
            tolerance,
            margin: None,
            dims: dims.to_vec(),
            status: Status::Fail,
            reason: Some(reason.into()),
        });
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.records.extend(other.records);
    }

    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    /// True when no record failed. Skipped records do not count as failures.
    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn sort_by_name(&mut self) {
        self.records.sort_by(|a, b| a.name.cmp(&b.name));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_residual_within_tolerance() {
        let mut r = VerificationReport::new();
        assert!(r.check("a", "x = x", 1e-12, 1e-12, None, &[4]).passed());
        assert!(!r.check("b", "x = y", 2e-12, 1e-12, Some(1), &[4]).passed());
        assert!(!r.check("c", "nan", f64::NAN, 1.0, None, &[]).passed());
        assert!(!r.all_passed());
        assert_eq!(r.failures().count(), 2);
    }

    #[test]
    fn skipped_is_not_failure() {
        let mut r = VerificationReport::new();
        r.skip("z", "needs D >= 3", 1e-8, &[2], "dimension too small");
        r.check("a", "0 = 0", 0.0, 1e-8, None, &[2]);
        assert!(r.all_passed());
        r.sort_by_name();
        assert_eq!(r.records[0].name, "a");
        assert_eq!(r.get("z").unwrap().status, Status::Skipped);
    }
}
