//! Rendering of tables and reports.

use std::io::Write;
use std::path::Path;

use serde_json::Value;

use crate::CliError;

/// Result of a command, before rendering.
pub enum Output {
    Table { header: Vec<&'static str>, rows: Vec<Vec<f64>>, footer: Option<String> },
    Report(Value),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// `x` rounded to 12 significant digits, printed in shortest form.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if (1e-4..1e15).contains(&rounded.abs()) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

pub fn render(out: &Output, format: Format) -> Result<String, CliError> {
    match (out, format) {
        (Output::Table { header, rows, footer }, Format::Csv) => {
            let mut s = header.join(",");
            s.push('\n');
            for row in rows {
                s.push_str(&row.iter().map(|&v| sig12(v)).collect::<Vec<_>>().join(","));
                s.push('\n');
            }
            if let Some(f) = footer {
                s.push_str(&format!("# {f}\n"));
            }
            Ok(s)
        }
        (Output::Table { header, rows, footer }, Format::Json) => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|row| Value::Object(header.iter().map(|h| h.to_string()).zip(row.iter().map(|&v| Value::from(v))).collect()))
                .collect();
            let mut obj = serde_json::json!({ "rows": rows });
            if let Some(f) = footer {
                obj["footer"] = Value::from(f.as_str());
            }
            Ok(pretty(&obj))
        }
        (Output::Report(v), Format::Json) => Ok(pretty(v)),
        (Output::Report(_), Format::Csv) => Err(CliError::Usage("this command only produces JSON".into())),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(|e| CliError::Input(e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig12(-1.125), "-1.125");
        assert_eq!(sig12(std::f64::consts::PI), "3.14159265359");
        assert_eq!(sig12(2.220446049250313e-16), "2.22044604925e-16");
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(-0.0), "0");
    }

    #[test]
    fn csv_table() {
        let t = Output::Table { header: vec!["a", "b"], rows: vec![vec![1.0, 0.5]], footer: Some("done".into()) };
        assert_eq!(render(&t, Format::Csv).unwrap(), "a,b\n1,0.5\n# done\n");
        assert!(render(&Output::Report(Value::Null), Format::Csv).is_err());
    }
}
