//! JSON envelope and serialization conventions shared by every command.
//!
//! Floats carry 15 significant digits, exact rationals are `"num/den"`
//! strings, and polynomials are coefficient arrays, low degree first.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::exact::IntPolynomial;
use crate::tree::Tree;

pub const TOOL: &str = "lapmult";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Bumped whenever a field is renamed, removed or changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

/// `x` rounded to 15 significant digits.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().expect("formatted float parses")
}

/// Rounds every float inside `v` to 15 significant digits.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let r = round15(n.as_f64().expect("f64 number"));
            if let Some(num) = serde_json::Number::from_f64(r) {
                *n = num;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn bigint_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn poly_json(p: &IntPolynomial) -> Value {
    Value::Array(p.coeffs().iter().map(bigint_json).collect())
}

pub fn rational_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// `{n, p, edges, original_labels}` of a (canonically relabeled) tree.
pub fn input_echo(t: &Tree) -> Value {
    json!({
        "n": t.order(),
        "p": t.pendants().len(),
        "edges": t.edges().iter().map(|&(u, v)| json!([u, v])).collect::<Vec<_>>(),
        "original_labels": t.original_labels(),
    })
}

/// The standard report envelope; `timing` goes last so that everything
/// before it is reproducible byte for byte.
pub fn envelope(command: &str, input: Value, params: Value, payload: Value, elapsed_ms: f64) -> Value {
    let mut map = Map::new();
    map.insert("tool".into(), json!(TOOL));
    map.insert("version".into(), json!(VERSION));
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(command));
    map.insert("input".into(), input);
    map.insert("params".into(), params);
    map.insert("payload".into(), payload);
    map.insert("timing".into(), json!({ "elapsed_ms": elapsed_ms }));
    let mut v = Value::Object(map);
    round_floats(&mut v);
    v
}

pub fn to_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}
