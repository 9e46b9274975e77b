//! Uniform pass/fail records emitted by every check.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub q: u64,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    pub witness: Option<String>,
}

impl CheckRecord {
    pub fn new(
        check: impl Into<String>,
        q: u64,
        ok: bool,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
        witness: Option<String>,
    ) -> Self {
        CheckRecord {
            check: check.into(),
            q,
            status: Status::from_bool(ok),
            expected: expected.to_string(),
            actual: actual.to_string(),
            witness,
        }
    }

    /// Passes iff the rendered values are identical.
    pub fn compare<T: fmt::Display + PartialEq>(
        check: impl Into<String>,
        q: u64,
        expected: T,
        actual: T,
    ) -> Self {
        let ok = expected == actual;
        Self::new(check, q, ok, expected, actual, None)
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn all_passed(records: &[CheckRecord]) -> bool {
    records.iter().all(CheckRecord::passed)
}
