//! Validation reports shared by all checks.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Undecided => "undecided",
        })
    }
}

/// Outcome of a validator: every violated identity is listed, so an empty
/// failure list means the check passed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub failures: Vec<String>,
    pub undecided: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), ..Default::default() }
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }

    pub fn undecided(&mut self, msg: impl Into<String>) {
        self.undecided.push(msg.into());
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    pub fn status(&self) -> Status {
        if !self.failures.is_empty() {
            Status::Fail
        } else if !self.undecided.is_empty() {
            Status::Undecided
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    /// Appends the lines of `other` under its title.
    pub fn absorb(&mut self, other: Report) {
        let t = other.title;
        self.failures.extend(other.failures.into_iter().map(|m| format!("{t}: {m}")));
        self.undecided.extend(other.undecided.into_iter().map(|m| format!("{t}: {m}")));
        self.notes.extend(other.notes.into_iter().map(|m| format!("{t}: {m}")));
    }
}
