//! Verdicts and law reports shared by the validators and the CLI.
//!
//! Checks never panic on a failed law; they record a verdict together with a
//! printable witness. `Unknown` is reserved for bounded searches that ran out
//! of budget, and is distinct from `Fails`.

use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// All law checks run against one named entity.
#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub entity: String,
    pub checks: Vec<LawCheck>,
}

impl LawReport {
    pub fn new(entity: impl Into<String>) -> LawReport {
        LawReport {
            entity: entity.into(),
            checks: Vec::new(),
        }
    }

    pub fn holds(&mut self, law: &str) {
        self.checks.push(LawCheck {
            law: law.to_string(),
            verdict: Verdict::Holds,
            witness: None,
        });
    }

    pub fn fails(&mut self, law: &str, witness: impl Into<String>) {
        self.checks.push(LawCheck {
            law: law.to_string(),
            verdict: Verdict::Fails,
            witness: Some(witness.into()),
        });
    }

    pub fn unknown(&mut self, law: &str, note: impl Into<String>) {
        self.checks.push(LawCheck {
            law: law.to_string(),
            verdict: Verdict::Unknown,
            witness: Some(note.into()),
        });
    }

    /// Record a boolean outcome, with the witness used only on failure.
    pub fn record(&mut self, law: &str, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.holds(law);
        } else {
            self.fails(law, witness());
        }
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == Verdict::Holds)
    }

    pub fn has_failure(&self) -> bool {
        self.checks.iter().any(|c| c.verdict == Verdict::Fails)
    }

    pub fn first_failure(&self) -> Option<&LawCheck> {
        self.checks.iter().find(|c| c.verdict == Verdict::Fails)
    }

    pub fn verdict_of(&self, law: &str) -> Option<Verdict> {
        self.checks.iter().find(|c| c.law == law).map(|c| c.verdict)
    }

    pub fn append(&mut self, mut other: LawReport) {
        self.checks.append(&mut other.checks);
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            let tag = match check.verdict {
                Verdict::Holds => "holds",
                Verdict::Fails => "fails",
                Verdict::Unknown => "unknown",
            };
            match &check.witness {
                Some(w) => writeln!(f, "[{tag}] {}: {} ({w})", self.entity, check.law)?,
                None => writeln!(f, "[{tag}] {}: {}", self.entity, check.law)?,
            }
        }
        Ok(())
    }
}
