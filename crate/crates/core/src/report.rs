use std::fmt;

use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Informational; never affects the exit code.
    Reported,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "exact-pass",
            Status::Fail => "fail",
            Status::Reported => "reported",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub label: String,
    /// The identity being checked, written out as a formula.
    pub reference: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub suite: String,
    pub s_max: u32,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
}

impl RunReport {
    pub fn new(suite: impl Into<String>, s_max: u32) -> Self {
        RunReport { suite: suite.into(), s_max, checks: Vec::new(), elapsed_ms: 0 }
    }

    pub fn push(
        &mut self,
        label: impl Into<String>,
        reference: impl Into<String>,
        status: Status,
        detail: impl Into<String>,
    ) {
        self.checks.push(Check { label: label.into(), reference: reference.into(), status, detail: detail.into() });
    }

    /// Records `Pass` when `ok`, otherwise `Fail`.
    pub fn assert(
        &mut self,
        label: impl Into<String>,
        reference: impl Into<String>,
        ok: bool,
        detail: impl Into<String>,
    ) {
        self.push(label, reference, if ok { Status::Pass } else { Status::Fail }, detail);
    }

    pub fn extend(&mut self, other: RunReport) {
        self.checks.extend(other.checks);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"label": c.label, "reference": c.reference, "status": c.status.as_str(), "detail": c.detail}))
            .collect();
        json!({
            "suite": self.suite,
            "s_max": self.s_max,
            "passed": self.all_passed(),
            "elapsed_ms": self.elapsed_ms as u64,
            "checks": checks,
        })
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "[{}] {}: {}", c.status.as_str(), c.label, c.reference)?;
            if !c.detail.is_empty() {
                write!(f, " ({})", c.detail)?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        writeln!(
            f,
            "suite={} s_max={} checks={} failed={} elapsed_ms={}",
            self.suite,
            self.s_max,
            self.checks.len(),
            failed,
            self.elapsed_ms
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_ignores_reported() {
        let mut r = RunReport::new("fock", 2);
        r.assert("a", "x = x", true, "");
        r.push("b", "y = y", Status::Reported, "nonzero");
        assert_eq!(r.exit_code(), 0);
        r.assert("c", "z = z", false, "");
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn text_and_json() {
        let mut r = RunReport::new("algebra", 3);
        r.assert("commutator", "[D, x] = I", true, "window 7");
        let text = r.to_string();
        assert!(text.starts_with("[exact-pass] commutator: [D, x] = I (window 7)"));
        assert_eq!(r.to_json()["checks"][0]["status"], "exact-pass");
    }
}
