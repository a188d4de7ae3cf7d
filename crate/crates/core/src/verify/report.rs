//! Per-check outcomes and their aggregation into a serializable report.
//!
//! JSON schema (`VerificationReport::to_json`):
//!
//! ```text
//! {
//!   "suite_id": "identities" | "inequalities" | "convexity" | "integral" | "all",
//!   "config": {"dim": n, "lambda_min": x, "lambda_max": x, "trials": n, "seed": n},
//!   "outcomes": [
//!     {"check_id": "...", "trial": n, "verdict": "pass" | "fail" | "domain-violation",
//!      "violation_magnitude": x, "tolerance": x, "seed": n,
//!      "parameters": [["r", 1.5], ...], "note": "..." (only when present)}
//!   ],
//!   "summary": {"pass": n, "fail": n, "domain_violation": n},
//!   "worst_violation": x
//! }
//! ```
//!
//! Outcomes are sorted by `(check_id, trial)`; within one trial they keep
//! generation order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::EnsembleConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The check's precondition does not hold for this trial; nothing was asserted.
    DomainViolation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check_id: String,
    pub trial: usize,
    pub verdict: Verdict,
    /// Scale-relative Frobenius residual (equalities) or clamped negated
    /// minimum eigenvalue of the asserted-nonnegative difference (orderings).
    /// Zero for domain violations.
    pub violation_magnitude: f64,
    pub tolerance: f64,
    pub seed: u64,
    pub parameters: Vec<(String, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckOutcome {
    pub fn parameter(&self, name: &str) -> Option<f64> {
        self.parameters.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub domain_violation: usize,
}

impl Summary {
    pub fn total(&self) -> usize {
        self.pass + self.fail + self.domain_violation
    }

    fn record(&mut self, verdict: Verdict) {
        match verdict {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::DomainViolation => self.domain_violation += 1,
        }
    }
}

/// Per-check aggregate used for the CSV summary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub check_id: String,
    pub pass: usize,
    pub fail: usize,
    pub domain_violation: usize,
    pub worst_violation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite_id: String,
    pub config: EnsembleConfig,
    pub outcomes: Vec<CheckOutcome>,
    pub summary: Summary,
    pub worst_violation: f64,
}

impl VerificationReport {
    /// Sorts outcomes by `(check_id, trial)` and computes the aggregates.
    pub fn new(suite_id: impl Into<String>, config: EnsembleConfig, mut outcomes: Vec<CheckOutcome>) -> Self {
        outcomes.sort_by(|x, y| x.check_id.cmp(&y.check_id).then(x.trial.cmp(&y.trial)));
        let mut summary = Summary::default();
        let mut worst = 0.0_f64;
        for o in &outcomes {
            summary.record(o.verdict);
            worst = worst.max(o.violation_magnitude);
        }
        VerificationReport {
            suite_id: suite_id.into(),
            config,
            outcomes,
            summary,
            worst_violation: worst,
        }
    }

    /// Merges several reports (same config) under a new suite id.
    pub fn merge(suite_id: impl Into<String>, config: EnsembleConfig, parts: Vec<VerificationReport>) -> Self {
        let outcomes = parts.into_iter().flat_map(|r| r.outcomes).collect();
        Self::new(suite_id, config, outcomes)
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| o.verdict == Verdict::Fail)
    }

    /// Outcomes whose id equals `check_id` or starts with `check_id.`.
    pub fn outcomes_for<'a>(&'a self, check_id: &'a str) -> impl Iterator<Item = &'a CheckOutcome> + 'a {
        self.outcomes.iter().filter(move |o| {
            o.check_id == check_id
                || (o.check_id.starts_with(check_id) && o.check_id[check_id.len()..].starts_with('.'))
        })
    }

    pub fn check_summaries(&self) -> Vec<CheckSummary> {
        let mut by_id: BTreeMap<&str, CheckSummary> = BTreeMap::new();
        for o in &self.outcomes {
            let entry = by_id.entry(&o.check_id).or_insert_with(|| CheckSummary {
                check_id: o.check_id.clone(),
                pass: 0,
                fail: 0,
                domain_violation: 0,
                worst_violation: 0.0,
            });
            match o.verdict {
                Verdict::Pass => entry.pass += 1,
                Verdict::Fail => entry.fail += 1,
                Verdict::DomainViolation => entry.domain_violation += 1,
            }
            entry.worst_violation = entry.worst_violation.max(o.violation_magnitude);
        }
        by_id.into_values().collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization cannot fail");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed report: {e}")))
    }
}
