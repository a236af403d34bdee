//! Text formats for 1D signals.
//!
//! CSV holds one real per line. JSON is either a flat array or an object
//! with a `samples` array (plus an optional `metadata` object on output).
//! Numbers are written in their shortest round-trip form, so reading back a
//! written file yields bit-identical samples.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// What to do with a non-numeric first CSV line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HeaderPolicy {
    #[default]
    Reject,
    Skip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TextFormat {
    Csv,
    Json,
}

impl TextFormat {
    /// `.json` means JSON; anything else is CSV.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => TextFormat::Json,
            _ => TextFormat::Csv,
        }
    }
}

pub fn parse_csv(text: &str, header: HeaderPolicy) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let field = line.trim();
        if field.is_empty() {
            continue;
        }
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() => out.push(v),
            Ok(_) => return Err(Error::Parse(format!("line {}: non-finite value", i + 1))),
            Err(_) if i == 0 && header == HeaderPolicy::Skip => {}
            Err(_) => {
                return Err(Error::Parse(format!(
                    "line {}: expected one number, found {field:?}",
                    i + 1
                )))
            }
        }
    }
    Ok(out)
}

pub fn parse_json(text: &str) -> Result<Vec<f64>> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let array = match &value {
        Value::Array(a) => a,
        Value::Object(o) => match o.get("samples") {
            Some(Value::Array(a)) => a,
            _ => return Err(Error::Parse("JSON object has no \"samples\" array".into())),
        },
        _ => return Err(Error::Parse("expected a JSON array or {\"samples\": [...]}".into())),
    };
    array
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_f64()
                .ok_or_else(|| Error::Parse(format!("sample {i} is not a number")))
        })
        .collect()
}

/// Picks JSON when the first non-blank character opens an array or object.
pub fn parse_signal(text: &str, header: HeaderPolicy) -> Result<Vec<f64>> {
    match text.trim_start().chars().next() {
        Some('[') | Some('{') => parse_json(text),
        _ => parse_csv(text, header),
    }
}

pub fn write_csv(samples: &[f64]) -> String {
    let mut out = String::with_capacity(samples.len() * 20);
    for v in samples {
        writeln!(out, "{v}").expect("writing to a String");
    }
    out
}

#[derive(Serialize)]
struct JsonSignal<'a> {
    samples: &'a [f64],
    #[serde(skip_serializing_if = "Option::is_none")]
    metadata: Option<&'a Value>,
}

pub fn write_json(samples: &[f64], metadata: Option<&Value>) -> String {
    let mut s = serde_json::to_string_pretty(&JsonSignal { samples, metadata })
        .expect("finite samples serialize");
    s.push('\n');
    s
}

pub fn write_signal(samples: &[f64], format: TextFormat, metadata: Option<&Value>) -> String {
    match format {
        TextFormat::Csv => write_csv(samples),
        TextFormat::Json => write_json(samples, metadata),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn csv_parsing() {
        assert_eq!(parse_csv("1\n2.5\n-3e-2\n", HeaderPolicy::Reject).unwrap(), [1.0, 2.5, -0.03]);
        assert!(parse_csv("value\n1\n", HeaderPolicy::Reject).is_err());
        assert_eq!(parse_csv("value\n1\n", HeaderPolicy::Skip).unwrap(), [1.0]);
        assert!(parse_csv("1\nx\n", HeaderPolicy::Skip).is_err());
        assert!(parse_csv("1,2\n", HeaderPolicy::Reject).is_err());
        assert!(parse_csv("NaN\n", HeaderPolicy::Reject).is_err());
    }

    #[test]
    fn json_parsing() {
        assert_eq!(parse_json("[1, 2.5]").unwrap(), [1.0, 2.5]);
        assert_eq!(parse_json(r#"{"samples": [3], "metadata": {}}"#).unwrap(), [3.0]);
        assert!(parse_json(r#"{"values": [3]}"#).is_err());
        assert!(parse_json(r#"[1, "a"]"#).is_err());
        assert_eq!(parse_signal("  [4]", HeaderPolicy::Reject).unwrap(), [4.0]);
        assert_eq!(parse_signal("4\n", HeaderPolicy::Reject).unwrap(), [4.0]);
    }

    proptest! {
        #[test]
        fn written_signals_read_back_exactly(v in prop::collection::vec(-1e300f64..1e300, 1..50)) {
            let csv = parse_signal(&write_csv(&v), HeaderPolicy::Reject).unwrap();
            let json = parse_signal(&write_json(&v, None), HeaderPolicy::Reject).unwrap();
            prop_assert_eq!(&csv, &v);
            prop_assert_eq!(&json, &v);
        }
    }
}
