//! Tabular reports rendered as CSV or JSON.

use std::io::Write;

use serde_json::{json, Map, Value};

use crate::config::{format_complex, Format, RunConfig};
use crate::CliResult;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:.12e}"),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) if x.is_finite() => json!(x),
            Cell::Num(x) => json!(x.to_string()),
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    /// Extra `key=value` items for the header line.
    pub meta: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Set when the run stopped early; the rows so far are still written.
    pub error: Option<String>,
    /// False when a check or threshold failed.
    pub ok: bool,
}

impl Report {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Self {
            command,
            meta: Vec::new(),
            columns,
            rows: Vec::new(),
            error: None,
            ok: true,
        }
    }

    fn header(&self, cfg: &RunConfig) -> String {
        let p = &cfg.params;
        let mut h = format!(
            "# whplasmon v{VERSION}; k={}; varsigma={}; theta={}",
            format_complex(p.k()),
            format_complex(p.varsigma()),
            p.theta()
        );
        for (k, v) in &self.meta {
            h.push_str(&format!("; {k}={v}"));
        }
        h
    }

    pub fn write(&self, cfg: &RunConfig, w: &mut dyn Write) -> CliResult<()> {
        match cfg.format {
            Format::Csv => {
                writeln!(w, "{}", self.header(cfg))?;
                writeln!(w, "{}", self.columns.join(","))?;
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    writeln!(w, "{}", cells.join(","))?;
                }
                if let Some(e) = &self.error {
                    writeln!(w, "# error: {e}")?;
                }
            }
            Format::Json => {
                let p = &cfg.params;
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let m: Map<String, Value> = self
                            .columns
                            .iter()
                            .zip(row)
                            .map(|(c, v)| (c.to_string(), v.json()))
                            .collect();
                        Value::Object(m)
                    })
                    .collect();
                let meta: Map<String, Value> =
                    self.meta.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
                let doc = json!({
                    "whplasmon": VERSION,
                    "command": self.command,
                    "params": {
                        "k": format_complex(p.k()),
                        "varsigma": format_complex(p.varsigma()),
                        "theta": p.theta(),
                    },
                    "meta": meta,
                    "columns": self.columns,
                    "rows": rows,
                    "ok": self.ok,
                    "error": self.error,
                });
                serde_json::to_writer_pretty(&mut *w, &doc).map_err(std::io::Error::from)?;
                writeln!(w)?;
            }
        }
        w.flush()?;
        Ok(())
    }
}
