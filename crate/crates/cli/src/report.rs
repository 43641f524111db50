use std::fmt::Write as _;
use std::io::{self, Write};

use bethe_core::gaudin::Check;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "txt",
        }
    }
}

/// Rows printed for `--format csv` and `--format text`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    fn of_checks(checks: &[Check]) -> Self {
        let mut t = Table::new(&["check", "pass"]);
        for c in checks {
            t.push(vec![c.name.clone(), c.pass.to_string()]);
        }
        t
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub config: Value,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub data: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Vec<(String, u128)>>,
    #[serde(skip)]
    pub table: Option<Table>,
}

impl RunReport {
    pub fn new(command: &str, config: Value, checks: Vec<Check>, data: Value, table: Option<Table>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self {
            command: command.into(),
            config,
            checks,
            pass,
            data,
            timings_ms: None,
            table,
        }
    }

    pub fn render(&self, format: Format) -> io::Result<Vec<u8>> {
        match format {
            Format::Json => {
                let mut out = serde_json::to_vec_pretty(self)?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Csv => {
                let table = self.table.clone().unwrap_or_else(|| Table::of_checks(&self.checks));
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&table.headers)?;
                for r in &table.rows {
                    w.write_record(r)?;
                }
                w.into_inner().map_err(|e| e.into_error())
            }
            Format::Text => Ok(self.text().into_bytes()),
        }
    }

    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.command, if self.pass { "PASS" } else { "FAIL" });
        for c in &self.checks {
            let _ = writeln!(s, "  [{}] {}", if c.pass { "ok" } else { "FAIL" }, c.name);
        }
        if let Some(t) = &self.table {
            s.push('\n');
            s.push_str(&aligned(t));
        }
        s
    }
}

fn aligned(t: &Table) -> String {
    let mut widths: Vec<usize> = t.headers.iter().map(|h| h.chars().count()).collect();
    for r in &t.rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = line(&t.headers);
    for r in &t.rows {
        s.push_str(&line(r));
    }
    s
}

pub fn write_stdout(bytes: &[u8]) -> io::Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(bytes)?;
    out.flush()
}
