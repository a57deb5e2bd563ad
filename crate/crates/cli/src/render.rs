use serde_json::{json, Value};

use crate::args::Format;
use crate::commands::CommandResult;

pub fn render_result(r: &CommandResult, format: Format) -> String {
    let v = serde_json::to_value(r).expect("results serialize to JSON");
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&v).unwrap()),
        Format::Text => text(&v),
    }
}

pub fn render_error(command: &str, e: &qdef::Error, exit_code: u8) -> String {
    let v = json!({
        "command": command,
        "error": {"message": e.to_string(), "exit_code": exit_code},
    });
    format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

/// One `key: value` line per top-level field; arrays and objects are
/// listed one entry per indented line.
fn text(v: &Value) -> String {
    let mut out = String::new();
    let Value::Object(map) = v else {
        return format!("{}\n", scalar(v));
    };
    for key in ["command", "inputs", "verdict", "value", "trace", "elapsed"] {
        let Some(field) = map.get(key) else { continue };
        match field {
            Value::Object(o) => {
                out.push_str(&format!("{key}:\n"));
                for (k, x) in o {
                    out.push_str(&format!("  {k}: {}\n", scalar(x)));
                }
            }
            Value::Array(a) => {
                out.push_str(&format!("{key}:\n"));
                for x in a {
                    out.push_str(&format!("  - {}\n", scalar(x)));
                }
            }
            Value::Null if key == "trace" => {}
            Value::Null if key == "verdict" => {}
            Value::Number(n) if key == "elapsed" => out.push_str(&format!("elapsed: {:.6}s\n", n.as_f64().unwrap_or(0.0))),
            x => out.push_str(&format!("{key}: {}\n", scalar(x))),
        }
    }
    out
}
