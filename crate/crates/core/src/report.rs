//! Uniform pass/fail/skip report shared by every command.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: Value,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub parameters: Value,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: &str, parameters: Value) -> Report {
        Report { command: command.to_string(), parameters, checks: Vec::new(), summary: Summary::default() }
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, details: Value) {
        match status {
            Status::Pass => self.summary.pass += 1,
            Status::Fail => self.summary.fail += 1,
            Status::Skip => self.summary.skip += 1,
        }
        self.checks.push(Check { name: name.into(), status, details });
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, details: Value) {
        self.push(name, Status::from_bool(ok), details);
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    /// Whether `summary` agrees with the check list.
    pub fn is_consistent(&self) -> bool {
        let count = |s| self.checks.iter().filter(|c| c.status == s).count();
        self.summary == Summary { pass: count(Status::Pass), fail: count(Status::Fail), skip: count(Status::Skip) }
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn tallies() {
        let mut r = Report::new("demo", json!({"n": 3}));
        r.check("a", true, Value::Null);
        r.check("b", false, json!("why"));
        r.push("c", Status::Skip, Value::Null);
        assert_eq!(r.summary, Summary { pass: 1, fail: 1, skip: 1 });
        assert!(r.is_consistent() && !r.passed());
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains(r#""status":"fail""#));
        assert_eq!(serde_json::from_str::<Report>(&text).unwrap(), r);
    }
}
