//! Check records shared by the verification suites.

use std::fmt;

use serde::Serialize;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    Diff,
    SkippedBudget,
    /// A mismatch against a claim recorded as conjectural, ambiguous or misprinted.
    ExpectedOpenQuestion,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "match",
            Status::Diff => "diff",
            Status::SkippedBudget => "skipped-budget",
            Status::ExpectedOpenQuestion => "expected-open-question",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    /// Descriptive label of the claim being checked.
    pub anchor: String,
    pub status: Status,
    pub left: String,
    pub right: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<(i128, i128)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub casimirs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip)]
    pub millis: u128,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, status: Status) -> Self {
        CheckRecord {
            id: id.into(),
            anchor: anchor.into(),
            status,
            left: String::new(),
            right: String::new(),
            dims: None,
            casimirs: Vec::new(),
            detail: None,
            millis: 0,
        }
    }

    /// `Match` when `ok`, otherwise `Diff`.
    pub fn verdict(id: impl Into<String>, anchor: impl Into<String>, ok: bool) -> Self {
        Self::new(id, anchor, if ok { Status::Match } else { Status::Diff })
    }

    pub fn sides(mut self, left: impl fmt::Display, right: impl fmt::Display) -> Self {
        self.left = left.to_string();
        self.right = right.to_string();
        self
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    /// Budget overruns become skips; any other error is a difference with
    /// the error as detail.
    pub fn from_error(id: impl Into<String>, anchor: impl Into<String>, e: Error) -> Self {
        let status = match e {
            Error::LimitExceeded(_) => Status::SkippedBudget,
            _ => Status::Diff,
        };
        Self::new(id, anchor, status).with_detail(e.to_string())
    }

    pub fn is_failure(&self) -> bool {
        self.status == Status::Diff
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub suite: String,
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn count(&self, s: Status) -> usize {
        self.records.iter().filter(|r| r.status == s).count()
    }

    pub fn has_diff(&self) -> bool {
        self.records.iter().any(CheckRecord::is_failure)
    }

    pub fn diffs(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.is_failure())
    }
}
