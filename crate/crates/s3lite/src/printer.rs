//! Display formatting: numerics at 7 significant digits with trailing
//! zeros trimmed, strings quoted, vectors behind an `[1] ` prefix.

use crate::value::{Payload, Value};

/// Rounds to `digits` significant decimal digits.
pub fn signif(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let mag = x.abs().log10().floor() as i32;
    let power = digits - 1 - mag;
    let factor = 10f64.powi(power);
    (x * factor).round() / factor
}

/// R-style numeric rendering: 7 significant digits, shortest form.
pub fn format_num(x: f64) -> String {
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "Inf" } else { "-Inf" }.to_string();
    }
    let r = signif(x, 7);
    format!("{r}")
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Renders a value the way the REPL prints it (no trailing newline).
pub fn format_value(v: &Value) -> String {
    match &v.payload {
        Payload::Numeric(xs) => format_vector(xs.iter().map(|x| format_num(*x)), "numeric(0)"),
        Payload::Strings(xs) => format_vector(xs.iter().map(|s| quote(s)), "character(0)"),
        Payload::Logical(xs) => format_vector(
            xs.iter().map(|b| if *b { "TRUE" } else { "FALSE" }.to_string()),
            "logical(0)",
        ),
        Payload::Record(fields) => {
            let mut blocks = Vec::new();
            for (name, val) in fields {
                blocks.push(format!("${name}\n{}", format_value(val)));
            }
            blocks.join("\n\n")
        }
        Payload::Closure(c) => {
            format!(
                "function({}) {}",
                c.params.join(", "),
                crate::pretty::pretty(&c.body)
            )
        }
        Payload::Builtin(name) => format!("<builtin '{name}'>"),
        Payload::Null => "NULL".to_string(),
    }
}

fn format_vector(items: impl Iterator<Item = String>, empty: &str) -> String {
    let items: Vec<String> = items.collect();
    if items.is_empty() {
        return empty.to_string();
    }
    format!("[1] {}", items.join(" "))
}
