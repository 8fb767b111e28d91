//! Structured pass/fail records for identity checks.

use crate::linalg::{Matrix, SVec};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Untested,
}

/// Reproducible witness of a failed identity: degree plus basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub degree: Option<usize>,
    pub input: Vec<(usize, String)>,
    pub note: String,
}

impl Counterexample {
    pub fn basis(degree: Option<usize>, index: usize, note: impl Into<String>) -> Self {
        Counterexample { degree, input: vec![(index, "1".to_string())], note: note.into() }
    }

    pub fn vector(degree: Option<usize>, v: &SVec, note: impl Into<String>) -> Self {
        Counterexample {
            degree,
            input: v.iter().map(|(i, c)| (*i, c.to_string())).collect(),
            note: note.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub identity: String,
    /// Mathematical anchor of the identity, or "plumbing".
    pub anchor: String,
    pub instance: String,
    pub degrees: String,
    pub status: Status,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub untested: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub entries: Vec<Entry>,
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport { entries: Vec::new() }
    }

    pub fn record(
        &mut self,
        identity: &str,
        anchor: &str,
        instance: &str,
        degrees: impl Into<String>,
        result: Result<(), Counterexample>,
    ) {
        let (status, counterexample) = match result {
            Ok(()) => (Status::Pass, None),
            Err(c) => (Status::Fail, Some(c)),
        };
        self.entries.push(Entry {
            identity: identity.to_string(),
            anchor: anchor.to_string(),
            instance: instance.to_string(),
            degrees: degrees.into(),
            status,
            counterexample,
        });
    }

    pub fn untested(&mut self, identity: &str, anchor: &str, instance: &str, degrees: impl Into<String>) {
        self.entries.push(Entry {
            identity: identity.to_string(),
            anchor: anchor.to_string(),
            instance: instance.to_string(),
            degrees: degrees.into(),
            status: Status::Untested,
            counterexample: None,
        });
    }

    pub fn extend(&mut self, o: VerificationReport) {
        self.entries.extend(o.entries);
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn find(&self, identity: &str) -> impl Iterator<Item = &Entry> {
        let id = identity.to_string();
        self.entries.iter().filter(move |e| e.identity == id)
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for e in &self.entries {
            match e.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Untested => s.untested += 1,
            }
        }
        s
    }
}

/// Exact matrix equality; on failure, the first differing basis column.
pub fn matrix_eq(lhs: &Matrix, rhs: &Matrix, degree: usize, what: &str) -> Result<(), Counterexample> {
    if lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() {
        return Err(Counterexample::basis(
            Some(degree),
            0,
            format!("{what}: shapes {}x{} vs {}x{}", lhs.rows(), lhs.cols(), rhs.rows(), rhs.cols()),
        ));
    }
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some(j) => Err(Counterexample::basis(
            Some(degree),
            j,
            format!("{what}: column {j} differs: {:?} vs {:?}", lhs.column(j), rhs.column(j)),
        )),
    }
}

/// First failure of a sequence of checks.
pub fn all_ok(checks: impl IntoIterator<Item = Result<(), Counterexample>>) -> Result<(), Counterexample> {
    checks.into_iter().collect()
}
