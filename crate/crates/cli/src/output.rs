use std::collections::BTreeMap;
use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Everything a command prints: a table plus key/value summary lines.
#[derive(Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub summary: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_unix: Option<u64>,
}

impl Report {
    pub fn new(command: impl Into<String>, columns: &[&str]) -> Self {
        Report { command: command.into(), columns: columns.iter().map(|c| c.to_string()).collect(), ..Default::default() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.summary.insert(key.to_string(), value.to_string());
    }

    pub fn render(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)
            }
            Format::Csv => {
                if let Some(t) = self.generated_unix {
                    writeln!(out, "# {} generated at unix time {t}", self.command)?;
                }
                for (k, v) in &self.summary {
                    writeln!(out, "# {k}: {v}")?;
                }
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(&self.columns)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.flush()
            }
            Format::Text => {
                if let Some(t) = self.generated_unix {
                    writeln!(out, "# {} generated at unix time {t}", self.command)?;
                }
                let mut width: Vec<usize> = self.columns.iter().map(String::len).collect();
                for r in &self.rows {
                    for (w, c) in width.iter_mut().zip(r) {
                        *w = (*w).max(c.len());
                    }
                }
                if !self.columns.is_empty() {
                    let line = |cells: &[String]| {
                        cells.iter().zip(&width).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
                    };
                    writeln!(out, "{}", line(&self.columns))?;
                    for r in &self.rows {
                        writeln!(out, "{}", line(r))?;
                    }
                }
                for (k, v) in &self.summary {
                    writeln!(out, "{k}: {v}")?;
                }
                Ok(())
            }
        }
    }
}
