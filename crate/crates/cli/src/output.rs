//! Report rendering. Text output is for people; machine output is one
//! `key=value` per line, byte-stable across runs.

use std::fmt::Write;
use std::time::Duration;

use bfv_core::report::{Report, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

enum Line {
    Value(String, String),
    Check(String, Status, Vec<String>),
}

pub struct Output {
    command: String,
    source: String,
    digest: String,
    lines: Vec<Line>,
}

impl Output {
    pub fn new(command: &str, source: String, digest: String) -> Self {
        Output { command: command.into(), source, digest, lines: Vec::new() }
    }

    pub fn value(&mut self, key: impl Into<String>, value: impl ToString) {
        self.lines.push(Line::Value(key.into(), value.to_string()));
    }

    pub fn check(&mut self, name: &str, status: Status, details: Vec<String>) {
        self.lines.push(Line::Check(name.into(), status, details));
    }

    /// Adds a validator report; notes are kept as details.
    pub fn report(&mut self, name: &str, r: &Report) {
        let details = r.failures.iter().chain(&r.undecided).chain(&r.notes).cloned().collect();
        self.check(name, r.status(), details);
    }

    pub fn status(&self) -> Status {
        let mut out = Status::Pass;
        for line in &self.lines {
            if let Line::Check(_, s, _) = line {
                match s {
                    Status::Fail => return Status::Fail,
                    Status::Undecided => out = Status::Undecided,
                    Status::Pass => {}
                }
            }
        }
        out
    }

    pub fn render(&self, format: Format, elapsed: Duration) -> String {
        let mut s = String::new();
        let status = self.status();
        match format {
            Format::Machine => {
                writeln!(s, "command={}", self.command).unwrap();
                writeln!(s, "source={}", self.source).unwrap();
                writeln!(s, "digest=sha256:{}", self.digest).unwrap();
                for line in &self.lines {
                    match line {
                        Line::Value(k, v) => writeln!(s, "{k}={v}").unwrap(),
                        Line::Check(name, st, details) => {
                            writeln!(s, "check.{name}={st}").unwrap();
                            for (i, d) in details.iter().enumerate() {
                                writeln!(s, "check.{name}.{}={d}", i + 1).unwrap();
                            }
                        }
                    }
                }
                writeln!(s, "status={status}").unwrap();
            }
            Format::Text => {
                writeln!(s, "bfv {} on {} (sha256 {})", self.command, self.source, &self.digest[..16]).unwrap();
                for line in &self.lines {
                    match line {
                        Line::Value(k, v) => writeln!(s, "{k} = {v}").unwrap(),
                        Line::Check(name, st, details) => {
                            writeln!(s, "[{st}] {name}").unwrap();
                            for d in details {
                                writeln!(s, "    {d}").unwrap();
                            }
                        }
                    }
                }
                writeln!(s, "status: {status} ({} ms)", elapsed.as_millis()).unwrap();
            }
        }
        s
    }
}
