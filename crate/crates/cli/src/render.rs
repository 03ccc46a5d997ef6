//! Deterministic text rendering: JSON with a stable envelope, and CSV with
//! fixed columns and 12-significant-digit numbers.

use serde_json::Value;

/// Formats a float with 12 significant digits and a '.' decimal separator.
/// Zero collapses to "0" so that -0.0 and 0.0 render identically.
pub fn fmt12(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else if x.is_finite() {
        format!("{:.11e}", x)
    } else {
        x.to_string()
    }
}

/// Formats an optional float, rendering absence as an empty field.
pub fn fmt12_opt(x: Option<f64>) -> String {
    x.map(fmt12).unwrap_or_default()
}

/// Serializes a record to pretty JSON. Key order is deterministic, so
/// identical records give byte-identical output.
pub fn to_json(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON serialization cannot fail")
}

/// Builds a CSV table from a header and rows. Fields are written verbatim;
/// every value this crate emits is a number, a short label, or a boolean,
/// none of which need quoting.
pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Flattens a JSON record into key,value CSV rows, one scalar per line, with
/// dotted paths for nesting and `[i]` suffixes for array entries.
pub fn json_to_kv_rows(value: &Value) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    flatten("", value, &mut rows);
    rows
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<Vec<String>>) {
    match value {
        Value::Object(map) => {
            for (key, child) in map {
                let path = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                flatten(&path, child, rows);
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), child, rows);
            }
        }
        Value::Number(n) => {
            let text = match n.as_f64() {
                Some(x) => fmt12(x),
                None => n.to_string(),
            };
            rows.push(vec![prefix.to_string(), text]);
        }
        Value::Bool(b) => rows.push(vec![prefix.to_string(), b.to_string()]),
        Value::String(s) => rows.push(vec![prefix.to_string(), s.clone()]),
        Value::Null => rows.push(vec![prefix.to_string(), String::new()]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt12(0.99), "9.90000000000e-1");
        assert_eq!(fmt12(0.0), "0");
        assert_eq!(fmt12(-0.0), "0");
        assert_eq!(fmt12(1.0), "1.00000000000e0");
        assert_eq!(fmt12(-2.5e-9), "-2.50000000000e-9");
        assert_eq!(fmt12(1.0 / 3.0), "3.33333333333e-1");
    }

    #[test]
    fn kv_rows_flatten_depth_first() {
        let value = serde_json::json!({
            "a": {"x": 1.0, "y": [true, null]},
            "b": "label"
        });
        let rows = json_to_kv_rows(&value);
        assert_eq!(
            rows,
            vec![
                vec!["a.x".to_string(), "1.00000000000e0".to_string()],
                vec!["a.y[0]".to_string(), "true".to_string()],
                vec!["a.y[1]".to_string(), String::new()],
                vec!["b".to_string(), "label".to_string()],
            ]
        );
    }

    #[test]
    fn csv_assembles_header_and_rows() {
        let text = to_csv(
            &["k", "v"],
            &[vec!["a".into(), "1".into()], vec!["b".into(), "2".into()]],
        );
        assert_eq!(text, "k,v\na,1\nb,2\n");
    }
}
