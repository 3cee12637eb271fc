//! Plain-text rendering of a report document. It walks the same JSON value
//! that `--format json` prints, so both formats carry the same content.

use std::fmt::Write;

use serde_json::Value;

pub fn text(doc: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = doc {
        for (k, v) in map {
            if k == "suites" {
                suites(&mut out, v);
            } else {
                entry(&mut out, 0, k, v);
            }
        }
    }
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn entry(out: &mut String, depth: usize, key: &str, v: &Value) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        let _ = writeln!(out, "{pad}{key}: {s}");
        return;
    }
    let _ = writeln!(out, "{pad}{key}:");
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                entry(out, depth + 1, k, x);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                entry(out, depth + 1, &format!("- [{i}]"), x);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

/// One line per case; the case data stays as compact JSON.
fn suites(out: &mut String, v: &Value) {
    let _ = writeln!(out, "suites:");
    let Value::Array(list) = v else { return };
    for s in list {
        let name = s["suite"].as_str().unwrap_or("?");
        let _ = writeln!(
            out,
            "  {name}: {} passed, {} failed, {} skipped",
            s["passed"], s["failed"], s["skipped"]
        );
        for case in s["cases"].as_array().into_iter().flatten() {
            let status = case["status"].as_str().unwrap_or("?");
            let mut line = format!("    {status:<7} {}", case["case"].as_str().unwrap_or("?"));
            for key in ["check", "witness", "reason"] {
                if let Some(x) = case.get(key) {
                    let _ = write!(line, "  {key}={x}");
                }
            }
            if let Some(d) = case.get("data") {
                let _ = write!(line, "  {d}");
            }
            let _ = writeln!(out, "{line}");
        }
    }
}
