use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

/// Outcome of one verification, serializable as the JSON the CLI prints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub spec: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
    pub pass: bool,
    /// Number of individual cases evaluated.
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Report>,
}

impl Report {
    pub fn new(check: impl Into<String>, spec: impl fmt::Display, bound: Option<u32>) -> Self {
        Report {
            check: check.into(),
            spec: spec.to_string(),
            bound,
            pass: true,
            cases: 0,
            counterexample: None,
            details: BTreeMap::new(),
            children: Vec::new(),
        }
    }

    /// Records one case; the first failure becomes the counterexample.
    pub fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
            self.pass = false;
        }
    }

    pub fn fail(&mut self, reason: impl Into<String>) {
        self.pass = false;
        if self.counterexample.is_none() {
            self.counterexample = Some(reason.into());
        }
    }

    pub fn detail(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.details.insert(key.into(), value.to_string());
    }

    /// Adds a sub-report; the parent fails if the child does.
    pub fn push(&mut self, child: Report) {
        self.cases += child.cases;
        if !child.pass {
            self.pass = false;
            if self.counterexample.is_none() {
                self.counterexample = Some(format!(
                    "{}: {}",
                    child.check,
                    child.counterexample.as_deref().unwrap_or("failed")
                ));
            }
        }
        self.children.push(child);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {} on {} ({} cases)",
            if self.pass { "PASS" } else { "FAIL" },
            self.check,
            self.spec,
            self.cases
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, ": {c}")?;
        }
        Ok(())
    }
}
