//! JSON output helpers. Every float is printed with 12 significant digits.

use serde::Serialize;
use serde_json::{Number, Value};

pub const SIGNIFICANT_DIGITS: usize = 12;

pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

/// Rounds every non-integer number in `v`.
pub fn rounded(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().unwrap_or(0.0), SIGNIFICANT_DIGITS);
            Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(rounded).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, rounded(v))).collect()),
        other => other,
    }
}

pub fn to_value<T: Serialize>(t: &T) -> anyhow::Result<Value> {
    Ok(rounded(serde_json::to_value(t)?))
}

pub fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values always serialize")
}

pub fn line(v: &Value) -> String {
    serde_json::to_string(v).expect("values always serialize")
}
