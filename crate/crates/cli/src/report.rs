use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Envelope around every command result.
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub config: Value,
    pub result: Value,
    pub runtime_secs: Option<f64>,
}

impl Report {
    pub fn to_value(&self) -> Value {
        let mut v = json!({
            "command": self.command,
            "config": self.config,
            "result": self.result,
            "seed": self.seed,
            "version": env!("CARGO_PKG_VERSION"),
        });
        if let Some(t) = self.runtime_secs {
            v["runtime_secs"] = json!(t);
        }
        v
    }

    /// JSON, or CSV: a `records` array of flat objects becomes a table,
    /// anything else becomes `key,value` rows with dotted keys.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut out = format!("# command={} seed={} version={}", self.command, self.seed, env!("CARGO_PKG_VERSION"));
                if let Some(t) = self.runtime_secs {
                    write!(out, " runtime_secs={t}").unwrap();
                }
                out.push('\n');
                match self.result.get("records").and_then(Value::as_array) {
                    Some(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
                        table(&mut out, rows);
                    }
                    _ => {
                        out.push_str("key,value\n");
                        let mut rows = Vec::new();
                        flatten("", &self.result, &mut rows);
                        for (k, v) in rows {
                            writeln!(out, "{},{}", field(&k), field(&v)).unwrap();
                        }
                    }
                }
                out
            }
        }
    }
}

fn table(out: &mut String, rows: &[Value]) {
    let mut header: Vec<String> = Vec::new();
    let flat: Vec<Map<String, Value>> = rows
        .iter()
        .map(|r| {
            let mut cells = Vec::new();
            flatten("", r, &mut cells);
            for (k, _) in &cells {
                if !header.contains(k) {
                    header.push(k.clone());
                }
            }
            cells.into_iter().map(|(k, v)| (k, Value::String(v))).collect()
        })
        .collect();
    writeln!(out, "{}", header.iter().map(|h| field(h)).collect::<Vec<_>>().join(",")).unwrap();
    for row in flat {
        let cells: Vec<String> =
            header.iter().map(|h| row.get(h).and_then(Value::as_str).map(field).unwrap_or_default()).collect();
        writeln!(out, "{}", cells.join(",")).unwrap();
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            out.push((prefix.to_string(), a.iter().map(scalar).collect::<Vec<_>>().join(";")));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        _ => out.push((prefix.to_string(), scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Read a value that may be given inline or as a path to a file.
pub fn inline_or_file(arg: &str) -> CliResult<String> {
    let p = Path::new(arg);
    if p.is_file() {
        Ok(std::fs::read_to_string(p)?)
    } else {
        Ok(arg.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(result: Value) -> Report {
        Report { command: "t".into(), seed: 1, config: json!({}), result, runtime_secs: None }
    }

    #[test]
    fn csv_records_become_a_table() {
        let r = report(json!({"records": [{"a": 1, "b": {"c": "x,y"}}, {"a": 2, "d": [1, 2]}]}));
        let csv = r.render(Format::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[1], "a,b.c,d");
        assert_eq!(lines[2], "1,\"x,y\",");
        assert_eq!(lines[3], "2,,1;2");
    }

    #[test]
    fn csv_scalars_become_key_value_rows() {
        let csv = report(json!({"bound": 3.5, "ci": [0.1, 0.2]})).render(Format::Csv);
        assert!(csv.contains("bound,3.5\n"));
        assert!(csv.contains("ci,0.1;0.2\n"));
    }

    #[test]
    fn runtime_only_when_requested() {
        let mut r = report(json!({}));
        assert!(!r.render(Format::Json).contains("runtime_secs"));
        r.runtime_secs = Some(0.5);
        assert!(r.render(Format::Json).contains("runtime_secs"));
    }
}
