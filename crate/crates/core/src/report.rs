//! Machine-readable outcome of one verification.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub label: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub value: Value,
}

/// A residual: exact (rendered element) or numeric with its tolerance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub label: String,
    pub value: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

/// Status is `pass` iff every recorded assertion holds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Map<String, Value>,
    pub status: Status,
    pub assertions: Vec<Assertion>,
    pub witnesses: Vec<Witness>,
    pub residuals: Vec<Residual>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            params: Map::new(),
            status: Status::Pass,
            assertions: Vec::new(),
            witnesses: Vec::new(),
            residuals: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn check_that(&mut self, label: impl Into<String>, holds: bool) -> bool {
        self.assertions.push(Assertion {
            label: label.into(),
            holds,
        });
        if !holds {
            self.status = Status::Fail;
        }
        holds
    }

    pub fn witness(&mut self, label: impl Into<String>, value: impl Into<Value>) {
        self.witnesses.push(Witness {
            label: label.into(),
            value: value.into(),
        });
    }

    pub fn exact_residual(&mut self, label: impl Into<String>, value: impl ToString) {
        self.residuals.push(Residual {
            label: label.into(),
            value: Value::String(value.to_string()),
            tolerance: None,
        });
    }

    /// Records `value` and asserts `value <= tolerance`.
    pub fn numeric_residual(&mut self, label: impl Into<String>, value: f64, tolerance: f64) -> bool {
        let label = label.into();
        self.residuals.push(Residual {
            label: label.clone(),
            value: json_number(value),
            tolerance: Some(tolerance),
        });
        self.check_that(format!("{label} <= {tolerance:e}"), value <= tolerance)
    }

    /// Records `value` and asserts `value > threshold` (negative controls).
    pub fn numeric_lower_bound(&mut self, label: impl Into<String>, value: f64, threshold: f64) -> bool {
        let label = label.into();
        self.residuals.push(Residual {
            label: label.clone(),
            value: json_number(value),
            tolerance: Some(threshold),
        });
        self.check_that(format!("{label} > {threshold:e}"), value > threshold)
    }

    /// Merge another report's assertions, witnesses and residuals under a prefix.
    pub fn absorb(&mut self, prefix: &str, other: CheckReport) {
        for a in other.assertions {
            self.check_that(format!("{prefix}: {}", a.label), a.holds);
        }
        for w in other.witnesses {
            self.witness(format!("{prefix}: {}", w.label), w.value);
        }
        for r in other.residuals {
            self.residuals.push(Residual {
                label: format!("{prefix}: {}", r.label),
                ..r
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }

    /// Stable sort key: check name, then parameters as JSON text.
    pub fn sort_key(&self) -> (String, String) {
        (self.check.clone(), Value::Object(self.params.clone()).to_string())
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "### {} {}\n", self.check, format_params(&self.params));
        let _ = writeln!(out, "Status: **{}**\n", self.status.as_str());
        if !self.assertions.is_empty() {
            out.push_str("| assertion | holds |\n|---|---|\n");
            for a in &self.assertions {
                let _ = writeln!(out, "| {} | {} |", escape(&a.label), if a.holds { "yes" } else { "NO" });
            }
            out.push('\n');
        }
        if !self.witnesses.is_empty() {
            out.push_str("| witness | value |\n|---|---|\n");
            for w in &self.witnesses {
                let _ = writeln!(out, "| {} | {} |", escape(&w.label), escape(&render(&w.value)));
            }
            out.push('\n');
        }
        if !self.residuals.is_empty() {
            out.push_str("| residual | value | tolerance |\n|---|---|---|\n");
            for r in &self.residuals {
                let tol = r.tolerance.map(|t| format!("{t:e}")).unwrap_or_else(|| "exact".into());
                let _ = writeln!(out, "| {} | {} | {} |", escape(&r.label), escape(&render(&r.value)), tol);
            }
            out.push('\n');
        }
        out
    }
}

fn json_number(v: f64) -> Value {
    serde_json::Number::from_f64(v)
        .map(Value::Number)
        .unwrap_or_else(|| Value::String(v.to_string()))
}

pub(crate) fn format_params(params: &Map<String, Value>) -> String {
    if params.is_empty() {
        return String::new();
    }
    let parts: Vec<String> = params.iter().map(|(k, v)| format!("{k}={}", render(v))).collect();
    format!("({})", parts.join(", "))
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn escape(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}
