//! Matrix JSON: `{"dim": n, "entries": [[[re, im], ...], ...]}`, row-major.

use serde_json::{json, Value};

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

impl ComplexMatrix {
    pub fn to_json_value(&self) -> Value {
        let entries: Vec<Value> = (0..self.dim())
            .map(|i| {
                Value::Array(
                    self.row(i)
                        .iter()
                        .map(|z| json!([finite_or_zero(z.re), finite_or_zero(z.im)]))
                        .collect(),
                )
            })
            .collect();
        json!({ "dim": self.dim(), "entries": entries })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("matrix JSON serializes")
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::MalformedMatrix(msg.to_string());
        let obj = v.as_object().ok_or_else(|| bad("expected a JSON object"))?;
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("`dim` must be a positive integer"))? as usize;
        if dim == 0 {
            return Err(bad("`dim` must be positive"));
        }
        let rows = obj
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("`entries` must be an array of rows"))?;
        if rows.len() != dim {
            return Err(Error::MalformedMatrix(format!(
                "expected {dim} rows, found {}",
                rows.len()
            )));
        }
        let mut out = Vec::with_capacity(dim);
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| Error::MalformedMatrix(format!("row {i} is not an array")))?;
            if row.len() != dim {
                return Err(Error::MalformedMatrix(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            let mut parsed = Vec::with_capacity(dim);
            for (j, entry) in row.iter().enumerate() {
                let pair = entry
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::MalformedMatrix(format!("entry ({i},{j}) is not a [re, im] pair")))?;
                let re = pair[0].as_f64();
                let im = pair[1].as_f64();
                match (re, im) {
                    (Some(re), Some(im)) => parsed.push(C64::new(re, im)),
                    _ => {
                        return Err(Error::MalformedMatrix(format!(
                            "entry ({i},{j}) has a non-numeric component"
                        )))
                    }
                }
            }
            out.push(parsed);
        }
        ComplexMatrix::from_rows(out).map_err(|e| Error::MalformedMatrix(e.to_string()))
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::MalformedMatrix(e.to_string()))?;
        Self::from_json_value(&v)
    }
}

fn finite_or_zero(x: f64) -> f64 {
    // matrices are finite by construction; keep the writer total anyway
    if x.is_finite() {
        x
    } else {
        0.0
    }
}
