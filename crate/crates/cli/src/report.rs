//! Line-oriented `key: value` reports. Everything above the timing block is
//! a pure function of the inputs and flags.

use std::fmt::{self, Display, Write as _};
use std::time::Duration;

use sha2::{Digest, Sha256};

pub const TIMING_HEADER: &str = "# timing";

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunReport {
    pub command: String,
    /// `(role, path, sha256)` of every file read.
    pub inputs: Vec<(String, String, String)>,
    pub fields: Vec<(String, String)>,
    /// Overall verdict; `None` for commands that only compute.
    pub verdict: Option<bool>,
    pub timings: Vec<(String, Duration)>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn input(&mut self, role: &str, path: &str, bytes: &[u8]) {
        self.inputs.push((role.into(), path.into(), sha256_hex(bytes)));
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Folds a partial verdict into the overall one.
    pub fn verdict(&mut self, holds: bool) {
        self.verdict = Some(self.verdict.unwrap_or(true) && holds);
    }

    pub fn time(&mut self, label: impl Into<String>, elapsed: Duration) {
        self.timings.push((label.into(), elapsed));
    }

    /// The report without its timing block.
    pub fn deterministic(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "tool: nsimplex {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(out, "command: {}", self.command);
        for (role, path, digest) in &self.inputs {
            let _ = writeln!(out, "input.{role}: {path} sha256={digest}");
        }
        for (k, v) in &self.fields {
            let _ = writeln!(out, "{k}: {v}");
        }
        if let Some(v) = self.verdict {
            let _ = writeln!(out, "verdict: {v}");
        }
        out
    }
}

impl Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.deterministic())?;
        writeln!(f, "{TIMING_HEADER}")?;
        for (label, d) in &self.timings {
            writeln!(f, "time.{label}_ms: {:.3}", d.as_secs_f64() * 1e3)?;
        }
        Ok(())
    }
}

/// Strips the timing block from a rendered report.
pub fn strip_timing(rendered: &str) -> &str {
    match rendered.find(TIMING_HEADER) {
        Some(i) => &rendered[..i],
        None => rendered,
    }
}

/// Comma-separated list.
pub fn list<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")
}
