//! JSON helpers for exact integers.

use num_bigint::BigInt;
use serde_json::Value;

/// An exact JSON number, whatever its size.
pub fn big_to_json(v: &BigInt) -> Value {
    serde_json::from_str(&v.to_string()).expect("decimal integers are valid JSON numbers")
}

/// Reads an exact integer back from a JSON number.
pub fn json_to_big(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.to_string().parse().ok(),
        _ => None,
    }
}

/// Pretty JSON with a trailing newline, stable across runs.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}
