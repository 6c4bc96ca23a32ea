use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
pub use crate::field::FieldChoice;
use crate::groebner::Budget;

pub const REPORT_SCHEMA: &str = "gtkit.report/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "verified_exact")]
    VerifiedExact,
    #[serde(rename = "verified_modular")]
    VerifiedModular,
    #[serde(rename = "inconclusive_budget")]
    InconclusiveBudget,
    #[serde(rename = "FAILED")]
    Failed,
}

impl Verdict {
    pub fn is_verified(self) -> bool {
        matches!(self, Verdict::VerifiedExact | Verdict::VerifiedModular)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::VerifiedExact => "verified_exact",
            Verdict::VerifiedModular => "verified_modular",
            Verdict::InconclusiveBudget => "inconclusive_budget",
            Verdict::Failed => "FAILED",
        }
    }
}

/// Runs `$body` with `$f` bound to the concrete field of `$choice`.
macro_rules! with_field {
    ($choice:expr, $f:ident => $body:expr) => {
        match $choice.prime_field()? {
            None => {
                let $f = $crate::field::Rationals;
                $body
            }
            Some(p) => {
                let $f = p;
                $body
            }
        }
    };
}
pub(crate) use with_field;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LabConfig {
    pub budget: Budget,
    /// Enables the expensive exact runs.
    pub long: bool,
}

impl Default for LabConfig {
    fn default() -> Self {
        LabConfig {
            budget: Budget::unlimited(),
            long: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ReportInputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub field: String,
    pub seeds: Vec<u64>,
    pub budget: Budget,
    pub long: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub wall_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub claim: String,
    pub statement: String,
    pub inputs: ReportInputs,
    pub verdict: Verdict,
    pub artifacts: Map<String, Value>,
    /// Present exactly when the verdict is FAILED.
    pub counterexample: Option<Value>,
    /// Sub-checks that ran out of budget.
    pub inconclusive: Vec<String>,
    pub notes: Vec<String>,
    /// Kept apart so the rest of the report is reproducible byte for byte.
    pub timing: Timing,
}

impl VerificationReport {
    /// JSON without the timing field.
    pub fn deterministic_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        v.as_object_mut().unwrap().remove("timing");
        v
    }

    pub fn artifact(&self, key: &str) -> Option<&Value> {
        self.artifacts.get(key)
    }
}

/// Accumulates artifacts and outcomes while a claim is checked.
pub(crate) struct ReportBuilder {
    started: Instant,
    claim: &'static str,
    statement: String,
    inputs: ReportInputs,
    exact: bool,
    artifacts: Map<String, Value>,
    failures: Vec<Value>,
    inconclusive: Vec<String>,
    notes: Vec<String>,
}

impl ReportBuilder {
    pub fn new(claim: &'static str, statement: impl Into<String>, inputs: ReportInputs, exact: bool) -> Self {
        ReportBuilder {
            started: Instant::now(),
            claim,
            statement: statement.into(),
            inputs,
            exact,
            artifacts: Map::new(),
            failures: Vec::new(),
            inconclusive: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn put(&mut self, key: &str, value: impl Serialize) {
        self.artifacts.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn fail(&mut self, check: &str, detail: impl Serialize) {
        let mut m = Map::new();
        m.insert("check".into(), Value::String(check.into()));
        m.insert("detail".into(), serde_json::to_value(detail).expect("serializable"));
        self.failures.push(Value::Object(m));
    }

    /// Checks `ok`, recording `detail` as a counterexample otherwise.
    pub fn expect(&mut self, ok: bool, check: &str, detail: impl Serialize) -> bool {
        if !ok {
            self.fail(check, detail);
        }
        ok
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Converts a budget error into an inconclusive sub-check.
    pub fn attempt<T>(&mut self, check: &str, r: Result<T>) -> Result<Option<T>> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(Error::Budget(kind)) => {
                self.inconclusive.push(format!("{check}: {kind}"));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    pub fn budget_hit(&mut self, check: &str, detail: impl Into<String>) {
        self.inconclusive.push(format!("{check}: {}", detail.into()));
    }

    pub fn finish(self) -> VerificationReport {
        let verdict = if !self.failures.is_empty() {
            Verdict::Failed
        } else if !self.inconclusive.is_empty() {
            Verdict::InconclusiveBudget
        } else if self.exact {
            Verdict::VerifiedExact
        } else {
            Verdict::VerifiedModular
        };
        let counterexample = match self.failures.len() {
            0 => None,
            1 => self.failures.into_iter().next(),
            _ => Some(Value::Array(self.failures)),
        };
        VerificationReport {
            schema: REPORT_SCHEMA,
            tool_version: TOOL_VERSION,
            claim: self.claim.to_string(),
            statement: self.statement,
            inputs: self.inputs,
            verdict,
            artifacts: self.artifacts,
            counterexample,
            inconclusive: self.inconclusive,
            notes: self.notes,
            timing: Timing {
                wall_seconds: self.started.elapsed().as_secs_f64(),
            },
        }
    }
}
