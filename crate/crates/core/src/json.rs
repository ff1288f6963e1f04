//! JSON shapes shared by the front ends (schema version 1).

use serde_json::{json, Value};

use crate::series::{fmt_coefficient, TruncatedSeries};

pub const SCHEMA_VERSION: u32 = 1;

/// `{"coeffs": [[exp, "p/q"], ...], "order": N}`
pub fn series_json(s: &TruncatedSeries) -> Value {
    let coeffs: Vec<Value> = s
        .terms()
        .map(|(k, c)| json!([k, fmt_coefficient(c)]))
        .collect();
    json!({ "coeffs": coeffs, "order": s.order() })
}
