//! Verification reporting: one record per check, a witness on failure, and
//! an overall flag that is true exactly when every check passed.

use std::time::Duration;

use serde_json::json;

/// How one check ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    /// The identity was tested and does not hold.
    Fail,
    /// The check could not be run as configured (budget/tolerance).
    Infeasible,
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Infeasible => "INFEASIBLE",
        }
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub params: String,
    pub status: CheckStatus,
    /// Reproducible witness for failures: the offending indices and both
    /// values.
    pub witness: Option<String>,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.status != CheckStatus::Pass)
    }

    pub fn any_infeasible(&self) -> Option<&CheckResult> {
        self.checks
            .iter()
            .find(|c| c.status == CheckStatus::Infeasible)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {:<38} {:<28} {:>8.1} ms\n",
                c.status.as_str(),
                c.name,
                c.params,
                c.elapsed.as_secs_f64() * 1e3
            ));
            if let Some(w) = &c.witness {
                out.push_str(&format!("       witness: {w}\n"));
            }
        }
        out.push_str(&format!(
            "{}: {} checks, {} failed\n",
            if self.all_passed() { "PASS" } else { "FAIL" },
            self.checks.len(),
            self.checks
                .iter()
                .filter(|c| c.status != CheckStatus::Pass)
                .count()
        ));
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "pass": self.all_passed(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "params": c.params,
                "status": c.status.as_str().to_ascii_lowercase(),
                "witness": c.witness,
                "millis": c.elapsed.as_secs_f64() * 1e3,
            })).collect::<Vec<_>>(),
        })
    }
}
