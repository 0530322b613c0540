//! JSON and text renderings of a report.
//!
//! The text form walks the same JSON value: scalars and small arrays inline,
//! objects as indented `key: value` lines, and arrays of flat records with
//! identical keys as aligned tables.

use serde_json::{Map, Value};

pub fn json(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).unwrap_or_else(|_| "null".into());
    s.push('\n');
    s
}

pub fn text(report: &Value) -> String {
    let mut out = String::new();
    match report {
        Value::Object(m) => object(&mut out, m, 0),
        other => {
            out.push_str(&inline(other));
            out.push('\n');
        }
    }
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

/// Scalars, arrays of scalars and arrays of such arrays (matrices).
fn is_inline(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| {
            matches!(x, Value::String(s) if s.chars().count() <= 24)
                || (is_scalar(x) && !x.is_string())
                || matches!(x, Value::Array(b) if b.iter().all(is_scalar))
        }),
        Value::Object(m) => m.is_empty(),
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(a) => {
            let parts: Vec<String> = a.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Object(_) => "{}".into(),
        other => other.to_string(),
    }
}

/// Keys of a table when `a` is a non-empty list of flat objects sharing keys.
fn table_keys(a: &[Value]) -> Option<Vec<String>> {
    let first = a.first()?.as_object()?;
    let keys: Vec<String> = first.keys().cloned().collect();
    let uniform = a.iter().all(|row| {
        row.as_object().is_some_and(|m| {
            m.len() == keys.len() && keys.iter().all(|k| m.get(k).is_some_and(is_inline))
        })
    });
    uniform.then_some(keys)
}

fn pad(out: &mut String, indent: usize) {
    out.extend(std::iter::repeat_n(' ', indent));
}

fn table(out: &mut String, a: &[Value], keys: &[String], indent: usize) {
    let cells: Vec<Vec<String>> = a
        .iter()
        .map(|row| keys.iter().map(|k| inline(&row[k.as_str()])).collect())
        .collect();
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| {
            cells
                .iter()
                .map(|r| r[i].chars().count())
                .chain([k.chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |out: &mut String, row: &[String]| {
        pad(out, indent);
        let parts: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(out, keys);
    for r in &cells {
        line(out, r);
    }
}

fn object(out: &mut String, m: &Map<String, Value>, indent: usize) {
    for (k, v) in m {
        pad(out, indent);
        out.push_str(k);
        out.push(':');
        value_after_key(out, v, indent);
    }
}

fn value_after_key(out: &mut String, v: &Value, indent: usize) {
    match v {
        _ if is_inline(v) => {
            out.push(' ');
            out.push_str(&inline(v));
            out.push('\n');
        }
        Value::Object(m) => {
            out.push('\n');
            object(out, m, indent + 2);
        }
        Value::Array(a) => {
            out.push('\n');
            if let Some(keys) = table_keys(a) {
                table(out, a, &keys, indent + 2);
                return;
            }
            for item in a {
                pad(out, indent + 2);
                out.push('-');
                match item {
                    Value::Object(m) if !m.is_empty() => {
                        out.push('\n');
                        object(out, m, indent + 4);
                    }
                    _ => value_after_key(out, item, indent + 2),
                }
            }
        }
        _ => unreachable!("scalars are inline"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nested_rendering() {
        let v = json!({"a": 1, "m": [[1, 0], [0, 1]], "o": {"s": "x", "n": null}});
        assert_eq!(text(&v), "a: 1\nm: [[1, 0], [0, 1]]\no:\n  s: x\n  n: -\n");
    }

    #[test]
    fn tables() {
        let v = json!({"rows": [{"name": "ab", "ok": true}, {"name": "c", "ok": false}]});
        assert_eq!(text(&v), "rows:\n  name  ok\n  ab    true\n  c     false\n");
    }

    #[test]
    fn json_is_pretty_with_newline() {
        assert_eq!(json(&json!({"a": [1]})), "{\n  \"a\": [\n    1\n  ]\n}\n");
    }
}
