//! Validation reports.
//!
//! Validators check every axiom they know about and collect the failures
//! instead of stopping at the first one, so a report doubles as a transcript.

use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: String,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub subject: String,
    /// Names of the rules that were evaluated, in order.
    pub checked: Vec<String>,
    pub violations: Vec<Violation>,
    /// Informational remarks that do not affect validity.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Self {
            subject: subject.into(),
            checked: Vec::new(),
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn check(&mut self, rule: impl Into<String>) {
        let rule = rule.into();
        if !self.checked.contains(&rule) {
            self.checked.push(rule);
        }
    }

    pub fn fail(&mut self, rule: impl Into<String>, witness: impl Into<String>) {
        let rule = rule.into();
        self.check(rule.clone());
        self.violations.push(Violation {
            rule,
            witness: witness.into(),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Fails `rule` with `witness` unless `ok`; returns `ok`.
    pub fn require(&mut self, rule: &str, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.check(rule);
        if !ok {
            self.fail(rule, witness());
        }
        ok
    }

    pub fn has_violation(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    /// Appends another report's rules and violations as `prefix: rule`.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for c in other.checked {
            self.check(format!("{prefix}: {c}"));
        }
        for v in other.violations {
            self.violations.push(Violation {
                rule: format!("{prefix}: {}", v.rule),
                witness: v.witness,
            });
        }
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.is_ok() { "valid" } else { "INVALID" };
        let n = self.checked.len();
        let rules = if n == 1 { "rule" } else { "rules" };
        writeln!(f, "{}: {} ({n} {rules} checked)", self.subject, status)?;
        for v in &self.violations {
            writeln!(f, "  violated {}: {}", v.rule, v.witness)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
