//! The JSON report written by every subcommand.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    /// `exact`, `closed-form`, `resolved` or `evidence`.
    pub provenance: String,
    pub detail: String,
}

impl CheckLine {
    pub fn new(name: impl Into<String>, pass: bool, provenance: &str, detail: impl Into<String>) -> Self {
        CheckLine { name: name.into(), pass, provenance: provenance.into(), detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub checks: Vec<CheckLine>,
    pub result: Value,
    pub pass: bool,
}

impl Report {
    pub fn new(command: &str, inputs: BTreeMap<String, Value>, checks: Vec<CheckLine>, result: Value) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Report { schema_version: SCHEMA_VERSION, command: command.into(), inputs, checks, result, pass }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Stage timings; never part of the report.
#[derive(Clone, Debug, Default, Serialize)]
pub struct TimingLog {
    pub stages: Vec<(String, f64)>,
}

impl TimingLog {
    pub fn push(&mut self, name: impl Into<String>, secs: f64) {
        self.stages.push((name.into(), secs));
    }

    pub fn extend(&mut self, prefix: &str, stages: &[(String, f64)]) {
        for (n, t) in stages {
            self.push(format!("{prefix}{n}"), *t);
        }
    }

    pub fn render(&self) -> String {
        self.stages.iter().map(|(n, t)| format!("{n}: {t:.3}s\n")).collect()
    }
}
