//! Structured verdicts shared by the checkers.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Satisfied,
    Violated,
    /// A resolution cap was hit before the answer was settled.
    Inconclusive,
    /// The hypotheses of the cited statement do not hold, so it says nothing.
    Inapplicable,
}

impl Verdict {
    /// Combines verdicts of conditions that must all hold.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Violated, _) | (_, Violated) => Violated,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            (Inapplicable, _) | (_, Inapplicable) => Inapplicable,
            _ => Satisfied,
        }
    }

    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Satisfied
        } else {
            Verdict::Violated
        }
    }

    pub fn is_satisfied(self) -> bool {
        self == Verdict::Satisfied
    }
}

/// One inspected group: a label, the degree it sits in and its dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub label: String,
    pub degree: i64,
    pub dimension: usize,
}

impl Evidence {
    pub fn new(label: impl Into<String>, degree: i64, dimension: usize) -> Evidence {
        Evidence {
            label: label.into(),
            degree,
            dimension,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub verdict: Verdict,
    /// The condition that produced the verdict.
    pub condition: String,
    pub evidence: Vec<Evidence>,
    pub notes: Vec<String>,
}

impl CriterionReport {
    pub fn new(condition: impl Into<String>) -> CriterionReport {
        CriterionReport {
            verdict: Verdict::Satisfied,
            condition: condition.into(),
            evidence: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Records a group that must vanish.
    pub fn require_zero(&mut self, label: impl Into<String>, degree: i64, dimension: usize) {
        if dimension != 0 {
            self.verdict = self.verdict.and(Verdict::Violated);
        }
        self.evidence.push(Evidence::new(label, degree, dimension));
    }

    /// Records a group for information only.
    pub fn record(&mut self, label: impl Into<String>, degree: i64, dimension: usize) {
        self.evidence.push(Evidence::new(label, degree, dimension));
    }

    pub fn fail(&mut self, note: impl Into<String>) {
        self.verdict = self.verdict.and(Verdict::Violated);
        self.notes.push(note.into());
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn merge(&mut self, other: Verdict) {
        self.verdict = self.verdict.and(other);
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_satisfied()
    }
}
