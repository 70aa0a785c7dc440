use std::fmt;

use serde::Serialize;

use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// Where a compared coefficient disagreed. Values are rendered with exact
/// rationals written `p/q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub vector: String,
    pub multidegree: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Pass,
            witness: None,
            detail: Some(detail.into()).filter(|d: &String| !d.is_empty()),
        }
    }

    pub fn fail(name: impl Into<String>, witness: Witness) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Fail,
            witness: Some(witness),
            detail: None,
        }
    }

    pub fn inconclusive(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Inconclusive,
            witness: None,
            detail: Some(detail.into()),
        }
    }

    /// Map an error raised while checking to a verdict. Missing data and
    /// short windows are inconclusive; nothing else is silently accepted.
    pub fn from_error(name: impl Into<String>, e: &Error) -> Self {
        Self::inconclusive(name, e.to_string())
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// Ordered list of check results for one structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub structure: String,
    pub window: String,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(structure: impl Into<String>, window: impl fmt::Display) -> Self {
        Report {
            structure: structure.into(),
            window: window.to_string(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: CheckResult) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Fail if anything failed, else inconclusive if anything was, else pass.
    pub fn overall(&self) -> Status {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.overall() == Status::Pass
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("structure: {}\nwindow: {}\n", self.structure, self.window);
        for c in &self.checks {
            out.push_str(&format!("{:<13} {}", c.status.to_string().to_uppercase(), c.name));
            if let Some(d) = &c.detail {
                out.push_str(&format!("  ({d})"));
            }
            out.push('\n');
            if let Some(w) = &c.witness {
                out.push_str(&format!(
                    "    at {} on {}\n    lhs = {}\n    rhs = {}\n",
                    w.multidegree, w.vector, w.lhs, w.rhs
                ));
            }
        }
        out.push_str(&format!("overall: {}\n", self.overall()));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn witness() -> Witness {
        Witness {
            vector: "t".into(),
            multidegree: "x^-1".into(),
            lhs: "1/2*t".into(),
            rhs: "0".into(),
        }
    }

    #[test]
    fn overall_prefers_fail() {
        let mut r = Report::new("s", "x:[-1,1]");
        r.push(CheckResult::pass("a", ""));
        assert_eq!(r.overall(), Status::Pass);
        r.push(CheckResult::inconclusive("b", "short window"));
        assert_eq!(r.overall(), Status::Inconclusive);
        r.push(CheckResult::fail("c", witness()));
        assert_eq!(r.overall(), Status::Fail);
    }

    #[test]
    fn json_shape() {
        let mut r = Report::new("s", "x:[-1,1]");
        r.push(CheckResult::fail("c", witness()));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["structure"], "s");
        assert_eq!(v["checks"][0]["status"], "fail");
        assert_eq!(v["checks"][0]["witness"]["lhs"], "1/2*t");
        assert!(v["checks"][0].get("detail").is_none());
    }
}
