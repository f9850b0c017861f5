//! JSON envelope and CSV helpers.
//!
//! Floating-point values are written with 17 significant digits in
//! scientific notation, which round-trips every `f64` exactly.

use std::str::FromStr;

use serde_json::{json, Map, Number, Value};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Formats `x` with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// JSON number with 17 significant digits; non-finite values become `null`.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(Number::from_str(&fmt_f64(x)).expect("formatted float is a JSON number"))
}

/// `{"command", "params", "seed", "results", "tool_version"}`.
pub fn envelope(command: &str, params: Value, seed: Option<u64>, results: Value) -> Value {
    let mut map = Map::new();
    map.insert("command".into(), json!(command));
    map.insert("params".into(), params);
    map.insert("seed".into(), seed.map_or(Value::Null, |s| json!(s)));
    map.insert("results".into(), results);
    map.insert("tool_version".into(), json!(TOOL_VERSION));
    Value::Object(map)
}

pub fn to_pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values always serialize")
}

/// Writes a header and rows as CSV into a string.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> Result<String, csv::Error> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header)?;
    for row in rows {
        writer.write_record(row)?;
    }
    let bytes = writer.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("CSV of ASCII fields is UTF-8"))
}
