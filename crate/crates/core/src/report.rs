//! Structured-text verification reports: deterministic key/value blocks
//! with a final pass verdict, rendered identically across runs.

use crate::space::fmt_sig17;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub suite: String,
    entries: Vec<(String, String)>,
    pub pass: bool,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Report {
        Report {
            suite: suite.into(),
            entries: Vec::new(),
            pass: true,
        }
    }

    pub fn line(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn number(&mut self, key: impl Into<String>, value: f64) {
        self.entries.push((key.into(), fmt_sig17(value)));
    }

    pub fn verdict(&mut self, key: impl Into<String>, ok: bool) {
        self.entries.push((key.into(), ok.to_string()));
        self.pass &= ok;
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite: {}", self.suite)?;
        for (k, v) in &self.entries {
            writeln!(f, "{k}: {v}")?;
        }
        writeln!(f, "pass: {}", self.pass)
    }
}
