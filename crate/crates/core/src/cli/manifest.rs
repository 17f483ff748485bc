use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::report::{format_params, CheckReport};

/// Everything one CLI run produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    pub passed: bool,
    pub reports: Vec<CheckReport>,
}

impl RunManifest {
    /// Sorts the reports by check name, then parameters.
    pub fn new(command: Vec<String>, seed: u64, timestamp: Option<String>, mut reports: Vec<CheckReport>) -> Self {
        reports.sort_by_key(|r| r.sort_key());
        RunManifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            seed,
            timestamp,
            passed: reports.iter().all(CheckReport::passed),
            reports,
        }
    }

    pub fn passed_count(&self) -> usize {
        self.reports.iter().filter(|r| r.passed()).count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest is plain data");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {} {}\n", self.tool, self.command.join(" "));
        let _ = writeln!(out, "- version: {}", self.version);
        let _ = writeln!(out, "- seed: {}", self.seed);
        if let Some(t) = &self.timestamp {
            let _ = writeln!(out, "- timestamp: {t}");
        }
        let _ = writeln!(
            out,
            "- result: **{}** ({}/{} checks passed)\n",
            if self.passed { "pass" } else { "fail" },
            self.passed_count(),
            self.reports.len()
        );
        out.push_str("| check | params | status |\n|---|---|---|\n");
        for r in &self.reports {
            let _ = writeln!(out, "| {} | {} | {} |", r.check, format_params(&r.params), r.status.as_str());
        }
        out.push('\n');
        for r in &self.reports {
            out.push_str(&r.to_markdown());
        }
        out
    }
}
