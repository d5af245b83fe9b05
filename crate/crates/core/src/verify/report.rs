//! Report JSON and the plain-text summary table.

use serde_json::{json, Value};

use super::{CheckReport, Mode, Status};

fn opt(x: Option<f64>) -> Value {
    match x {
        Some(v) if v.is_finite() => json!(v),
        _ => Value::Null,
    }
}

impl CheckReport {
    pub fn to_json_value(&self) -> Value {
        let sides = match &self.sides {
            Some(s) => json!({
                "positive": s.positive,
                "negative": s.negative,
                "redrawn": s.redrawn,
                "dead_band": s.dead_band,
            }),
            None => Value::Null,
        };
        json!({
            "id": self.id,
            "paper_anchor": self.paper_anchor,
            "mode": self.mode,
            "trials": self.trials,
            "violations": self.violations,
            "max_violation": opt(self.max_violation),
            "sharpness_ratio": opt(self.sharpness_ratio),
            "witnesses": self.witnesses.iter().map(|w| w.to_json_value()).collect::<Vec<_>>(),
            "counterexamples": self.counterexamples,
            "sides": sides,
            "status": self.status.as_str(),
            "error": self.error,
        })
    }
}

pub fn reports_to_json_value(reports: &[CheckReport]) -> Value {
    Value::Array(reports.iter().map(CheckReport::to_json_value).collect())
}

/// Pretty-printed JSON with sorted keys and shortest round-trip floats.
pub fn reports_to_json(reports: &[CheckReport]) -> String {
    let mut s = serde_json::to_string_pretty(&reports_to_json_value(reports)).expect("reports serialize");
    s.push('\n');
    s
}

fn outcome(r: &CheckReport) -> String {
    match (r.mode, r.status) {
        (_, Status::Error) => format!("ERROR ({})", r.error.as_deref().unwrap_or("")),
        (Mode::Scrutiny, s) => s.as_str().to_string(),
        (_, s) => s.as_str().to_string(),
    }
}

/// One row per check: id, outcome, trials, violations, sharpness.
pub fn render_table(reports: &[CheckReport]) -> String {
    let width = reports.iter().map(|r| r.id.len()).max().unwrap_or(2).max(5);
    let outcomes: Vec<String> = reports.iter().map(outcome).collect();
    let ow = outcomes.iter().map(|o| o.chars().count()).max().unwrap_or(0).max(20);
    let mut out = format!(
        "{:<width$}  {:<ow$}  {:>8}  {:>10}  {:>10}\n",
        "check", "outcome", "trials", "violations", "sharpness"
    );
    for (r, o) in reports.iter().zip(&outcomes) {
        let sharp = r.sharpness_ratio.map_or_else(|| "-".to_string(), |s| format!("{s:.6}"));
        out.push_str(&format!(
            "{:<width$}  {:<ow$}  {:>8}  {:>10}  {:>10}\n",
            r.id, o, r.trials, r.violations, sharp
        ));
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    out.push_str(&format!("{} checks, {} failed\n", reports.len(), failed));
    out
}
