//! The merge-only per-check accumulator.

use serde_json::{json, Value};

use crate::complexmat::ComplexMatrix;

/// Relative tolerance for inequality and equality predicates.
pub const REL_TOL: f64 = 1e-8;

pub(crate) const MAX_WITNESSES: usize = 3;

/// A labelled set of matrices exhibiting a violation, a counterexample or an
/// equality case.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub label: String,
    pub matrices: Vec<ComplexMatrix>,
}

impl Witness {
    pub fn new(label: impl Into<String>, matrices: &[&ComplexMatrix]) -> Self {
        Self {
            label: label.into(),
            matrices: matrices.iter().map(|m| (*m).clone()).collect(),
        }
    }

    pub fn to_json_value(&self) -> Value {
        let mats: Vec<Value> = self.matrices.iter().map(ComplexMatrix::to_json_value).collect();
        json!({ "label": self.label, "matrices": mats })
    }
}

/// One decision inside an equivalence: a normalized defect and the
/// threshold under which the predicate is considered true.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Decision {
    pub name: &'static str,
    pub defect: f64,
    pub tol: f64,
}

impl Decision {
    pub fn new(name: &'static str, defect: f64, tol: f64) -> Self {
        Self { name, defect, tol }
    }

    pub fn holds(&self) -> bool {
        self.defect <= self.tol
    }

    /// Neither clearly true nor false by a factor of ten.
    pub fn in_dead_band(&self) -> bool {
        self.defect > self.tol && self.defect < 10.0 * self.tol
    }
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Tally {
    pub trials: u64,
    pub violations: u64,
    pub min_slack: Option<f64>,
    pub sharpness: Option<f64>,
    pub witnesses: Vec<Witness>,
    pub positives: u64,
    pub negatives: u64,
    pub redraws: u64,
    pub dead_band: u64,
    pub counterexamples: u64,
}

fn fmin(a: Option<f64>, b: f64) -> Option<f64> {
    Some(a.map_or(b, |a| a.min(b)))
}

fn fmax(a: Option<f64>, b: f64) -> Option<f64> {
    Some(a.map_or(b, |a| a.max(b)))
}

impl Tally {
    pub fn merge(&mut self, other: Tally) {
        self.trials += other.trials;
        self.violations += other.violations;
        if let Some(s) = other.min_slack {
            self.min_slack = fmin(self.min_slack, s);
        }
        if let Some(s) = other.sharpness {
            self.sharpness = fmax(self.sharpness, s);
        }
        for w in other.witnesses {
            self.keep(w);
        }
        self.positives += other.positives;
        self.negatives += other.negatives;
        self.redraws += other.redraws;
        self.dead_band += other.dead_band;
        self.counterexamples += other.counterexamples;
    }

    pub fn case(&mut self) {
        self.trials += 1;
    }

    pub fn keep(&mut self, w: Witness) {
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }

    fn slack(&mut self, s: f64) {
        self.min_slack = fmin(self.min_slack, s);
    }

    fn violate(&mut self, w: impl FnOnce() -> Witness) {
        self.violations += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w());
        }
    }

    /// Asserts `lhs ≤ rhs` up to [`REL_TOL`].
    pub fn ineq(&mut self, lhs: f64, rhs: f64, w: impl FnOnce() -> Witness) {
        let s = rel_slack(lhs, rhs);
        self.slack(s);
        if rhs > 0.0 && lhs.is_finite() {
            self.sharpness = fmax(self.sharpness, (lhs / rhs).max(0.0));
        }
        if !(s >= -REL_TOL) {
            self.violate(w);
        }
    }

    /// Asserts `|x − y| ≤ REL_TOL·scale`.
    pub fn equal(&mut self, x: f64, y: f64, scale: f64, w: impl FnOnce() -> Witness) {
        let s = -(x - y).abs() / scale.max(f64::MIN_POSITIVE);
        self.slack(s);
        if !(s >= -REL_TOL) {
            self.violate(w);
        }
    }

    /// Asserts a plain boolean fact.
    pub fn require(&mut self, ok: bool, w: impl FnOnce() -> Witness) {
        if !ok {
            self.violate(w);
        }
    }

    /// Asserts `premise ⇒ conclusion`; `slack` is the signed margin of the
    /// conclusion and only counts when the premise holds.
    pub fn implication(&mut self, premise: bool, conclusion: bool, slack: f64, w: impl FnOnce() -> Witness) {
        if !premise {
            return;
        }
        self.slack(slack);
        self.positives += 1;
        if !conclusion {
            self.violate(w);
        }
    }

    /// Records an equivalence sample: all decisions must agree.
    pub fn agreement(&mut self, decisions: &[Decision], w: impl FnOnce() -> Witness) {
        let first = decisions[0].holds();
        if decisions.iter().all(|d| d.holds() == first) {
            if first {
                self.positives += 1;
            } else {
                self.negatives += 1;
            }
            // distance of the closest decision from its threshold, in units of tol
            let margin = decisions
                .iter()
                .map(|d| ((d.defect - d.tol) / d.tol).abs())
                .fold(f64::INFINITY, f64::min);
            self.slack(margin.min(1.0) * REL_TOL);
        } else {
            let worst = decisions.iter().map(|d| d.defect).fold(0.0f64, f64::max);
            self.slack(-worst);
            self.violate(w);
        }
    }

    /// Scrutiny of a claimed `lhs ≤ rhs`; a failure is a counterexample,
    /// not a violation.
    pub fn claim_ineq(&mut self, lhs: f64, rhs: f64, w: impl FnOnce() -> Witness) {
        let s = rel_slack(lhs, rhs);
        self.slack(s);
        if !(s >= -REL_TOL) {
            self.counterexamples += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w());
            }
        }
    }

    /// Scrutiny of a claimed `x = y`.
    pub fn claim_equal(&mut self, x: f64, y: f64, scale: f64, w: impl FnOnce() -> Witness) {
        let s = -(x - y).abs() / scale.max(f64::MIN_POSITIVE);
        self.slack(s);
        if !(s >= -REL_TOL) {
            self.counterexamples += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w());
            }
        }
    }
}

fn rel_slack(lhs: f64, rhs: f64) -> f64 {
    let scale = lhs.abs().max(rhs.abs());
    if scale == 0.0 {
        0.0
    } else {
        (rhs - lhs) / scale
    }
}
