//! Line-oriented check reports: `PASS|FAIL|SKIP <check-id> <details>`.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub status: Status,
    pub id: String,
    pub details: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, status: Status, id: impl Into<String>, details: impl Into<String>) {
        self.checks.push(Check {
            status,
            id: id.into(),
            details: details.into(),
        });
    }

    /// Records PASS or FAIL depending on `ok`.
    pub fn check(&mut self, ok: bool, id: impl Into<String>, details: impl Into<String>) -> bool {
        self.push(if ok { Status::Pass } else { Status::Fail }, id, details);
        ok
    }

    pub fn skip(&mut self, id: impl Into<String>, details: impl Into<String>) {
        self.push(Status::Skip, id, details);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.details.is_empty() {
                writeln!(f, "{} {}", c.status, c.id)?;
            } else {
                writeln!(f, "{} {} {}", c.status, c.id, c.details)?;
            }
        }
        Ok(())
    }
}
