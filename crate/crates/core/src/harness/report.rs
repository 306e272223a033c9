use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::exactfield::ExactMatrix;
use crate::liealg::{Kind, MatrixDocument};

/// How the per-trial outcomes of a claim decide its verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PassRule {
    /// Every trial must pass.
    All,
    /// Strictly more than half of the trials must pass; used for genericity
    /// evidence rather than exact statements.
    Majority,
}

/// A failing trial, with enough information to replay it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub seed: u64,
    /// The element under test, in the matrix document format.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<MatrixDocument>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub anchor: String,
    pub algebra: String,
    pub rule: PassRule,
    pub trials: usize,
    pub passes: usize,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub metrics: BTreeMap<String, Value>,
}

impl ClaimResult {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, algebra: impl Into<String>, rule: PassRule) -> Self {
        ClaimResult {
            id: id.into(),
            anchor: anchor.into(),
            algebra: algebra.into(),
            rule,
            trials: 0,
            passes: 0,
            failures: Vec::new(),
            metrics: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        if self.trials == 0 {
            return true;
        }
        match self.rule {
            PassRule::All => self.failures.is_empty() && self.passes == self.trials,
            PassRule::Majority => 2 * self.passes > self.trials,
        }
    }

    /// Record one trial.
    pub fn record(&mut self, ok: bool, failure: impl FnOnce() -> Failure) {
        self.trials += 1;
        if ok {
            self.passes += 1;
        } else if self.rule == PassRule::All {
            self.failures.push(failure());
        }
    }

    pub fn metric(&mut self, key: &str, value: impl Into<Value>) {
        self.metrics.insert(key.to_string(), value.into());
    }
}

/// The outcome of one suite run.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub claims: Vec<ClaimResult>,
    /// Excluded from equality and from [`Report::canonical_json`].
    #[serde(skip)]
    pub wall_time_ms: u128,
}

impl PartialEq for Report {
    fn eq(&self, other: &Self) -> bool {
        self.suite == other.suite && self.seed == other.seed && self.claims == other.claims
    }
}

impl Report {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(ClaimResult::passed)
    }

    pub fn failed_claims(&self) -> impl Iterator<Item = &ClaimResult> {
        self.claims.iter().filter(|c| !c.passed())
    }

    /// JSON without the wall time: identical configurations give identical bytes.
    pub fn canonical_json(&self) -> Value {
        serde_json::to_value(self).expect("report serialises")
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.canonical_json();
        v["passed"] = Value::Bool(self.passed());
        v["wall_time_ms"] = Value::from(self.wall_time_ms as u64);
        v
    }

    /// One line per claim, then a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let _ = write!(
                out,
                "{} {:<40} {:<8} {}/{}",
                if c.passed() { "PASS" } else { "FAIL" },
                c.id,
                c.algebra,
                c.passes,
                c.trials
            );
            if !c.metrics.is_empty() {
                let m: Vec<String> = c.metrics.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = write!(out, "  [{}]", m.join(", "));
            }
            out.push('\n');
            for f in c.failures.iter().take(3) {
                let _ = writeln!(out, "    trial {} seed {}: {}", f.trial, f.seed, f.detail);
            }
        }
        let failed = self.failed_claims().count();
        let _ = writeln!(
            out,
            "suite {}: {} claims, {} failed, {} ms",
            self.suite,
            self.claims.len(),
            failed,
            self.wall_time_ms
        );
        out
    }
}

pub(crate) fn witness(kind: Kind, x: &ExactMatrix) -> Option<MatrixDocument> {
    Some(MatrixDocument::from_matrix(kind, x))
}
