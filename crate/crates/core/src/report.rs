//! Shared verdict and report structures for structural and Lyapunov checks.

use crate::scalar::Scalar;

/// Tri-state outcome of an exact structural check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }
}

/// Outcome of a sampled verification run.
#[derive(Clone, Debug, PartialEq)]
pub enum VerifyVerdict {
    /// Every sampled point passed; the quantifier was checked on a finite
    /// cross-section, never proved.
    HoldsSampled,
    /// A concrete witness violates the condition.
    Fails,
    /// A hypothesis of the theorem being exercised is not met.
    HypothesisNotMet,
    /// Non-convergence or solver trouble prevented a conclusion.
    Inconclusive,
}

/// A point (or ray) at which a condition failed, re-checkable independently.
#[derive(Clone, Debug)]
pub struct Witness<S: Scalar> {
    /// State at which the violation occurs.
    pub state: Vec<S>,
    /// Violating successor, when the failure is about a specific `y`.
    pub successor: Option<Vec<S>>,
    /// Unbounded direction, when the failure escapes along a ray.
    pub ray: Option<Vec<S>>,
    pub detail: String,
}

impl<S: Scalar> Witness<S> {
    pub fn at_state(state: Vec<S>, detail: impl Into<String>) -> Self {
        Witness { state, successor: None, ray: None, detail: detail.into() }
    }
}

/// Structured verdict with certificates and bookkeeping.
#[derive(Clone, Debug)]
pub struct VerificationReport<S: Scalar> {
    pub name: String,
    pub verdict: VerifyVerdict,
    pub witness: Option<Witness<S>>,
    pub checked_points: usize,
    /// Worst observed decay ratio `V(y)/V(x)` over the samples.
    pub gamma_margin: Option<S>,
    pub notes: Vec<String>,
    pub sub_reports: Vec<VerificationReport<S>>,
}

impl<S: Scalar> VerificationReport<S> {
    pub fn new(name: impl Into<String>, verdict: VerifyVerdict) -> Self {
        VerificationReport {
            name: name.into(),
            verdict,
            witness: None,
            checked_points: 0,
            gamma_margin: None,
            notes: Vec::new(),
            sub_reports: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}
