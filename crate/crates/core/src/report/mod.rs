//! Query parsing, orchestration and deterministic rendering.
//!
//! JSON objects use sorted keys and every rational is the string `"num/den"`,
//! so identical queries give identical bytes.

mod query;
mod run;

use serde_json::{Map, Value};

use crate::exact_linalg::{format_rational, RatMatrix, Rational};

pub use query::{parse_query, GradingSel, OutputFormat, ParseError, QueryKind, QuerySpec, SweepFamily};
pub use run::{run_query, sweep_items};

pub const SCHEMA_VERSION: u64 = 1;

/// Exit code for usage and input errors.
pub const EXIT_INPUT: i32 = 2;
/// Exit code when a report is produced but some certification flag is false.
pub const EXIT_UNCERTIFIED: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct ReportDocument {
    pub value: Value,
    /// False when any certification flag in the report is false.
    pub certified: bool,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.value).expect("JSON values always serialize");
        s.push('\n');
        s
    }

    /// Flattened `path: value` lines in key order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        text_lines(&self.value, "", &mut out);
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Text => self.to_text(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.certified {
            0
        } else {
            EXIT_UNCERTIFIED
        }
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn text_lines(v: &Value, path: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, child) in m {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                text_lines(child, &p, out);
            }
        }
        Value::Array(items) => {
            let flat: Option<Vec<String>> = items.iter().map(scalar_text).collect();
            match flat {
                Some(parts) => out.push_str(&format!("{path}: [{}]\n", parts.join(", "))),
                None => {
                    for (i, child) in items.iter().enumerate() {
                        text_lines(child, &format!("{path}[{i}]"), out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{path}: {}\n", scalar_text(other).unwrap_or_default())),
    }
}

pub(crate) fn q(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub(crate) fn qs(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

pub(crate) fn ints<T: Into<i64> + Copy>(v: &[T]) -> Value {
    Value::Array(v.iter().map(|&x| Value::from(x.into())).collect())
}

pub(crate) fn matrix(m: &RatMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| qs(m.row(i))).collect())
}

/// A diagonal matrix as its diagonal, anything else row by row.
pub(crate) fn diag_or_matrix(m: &RatMatrix) -> Value {
    if m.is_diagonal() {
        qs(&m.diag())
    } else {
        matrix(m)
    }
}

pub(crate) fn obj<const N: usize>(pairs: [(&str, Value); N]) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::ratio;

    #[test]
    fn rendering() {
        let doc = ReportDocument {
            value: obj([("b", obj([("x", q(&ratio(1, 2))), ("y", Value::Bool(true))])), ("a", ints(&[1i64, 2]))]),
            certified: true,
        };
        assert_eq!(doc.to_text(), "a: [1, 2]\nb.x: 1/2\nb.y: true\n");
        assert_eq!(
            doc.to_json(),
            "{\n  \"a\": [\n    1,\n    2\n  ],\n  \"b\": {\n    \"x\": \"1/2\",\n    \"y\": true\n  }\n}\n"
        );
        assert_eq!(doc.exit_code(), 0);
        let partial = ReportDocument { certified: false, ..doc };
        assert_eq!(partial.exit_code(), EXIT_UNCERTIFIED);
    }
}
