//! The document every subcommand produces, and its three renderings.
//!
//! Result rows are ordered string maps. Integers are decimal strings,
//! booleans are `true`/`false`, absent values are empty strings, so the
//! JSON, CSV and table forms carry identical content.

use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::args::Format;

pub type Row = IndexMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub command: String,
    pub params: IndexMap<String, String>,
    pub results: Vec<Row>,
    pub flags: IndexMap<String, bool>,
    pub exit_hint: i32,
}

impl OutputDocument {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            params: IndexMap::new(),
            results: Vec::new(),
            flags: IndexMap::new(),
            exit_hint: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    /// Column names in first-seen order across all rows.
    pub fn columns(&self) -> Vec<String> {
        let mut cols: Vec<String> = Vec::new();
        for row in &self.results {
            for key in row.keys() {
                if !cols.contains(key) {
                    cols.push(key.clone());
                }
            }
        }
        cols
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("string maps serialize");
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv(),
            Format::Table => self.to_table(),
        }
    }

    pub fn to_csv(&self) -> String {
        let cols = self.columns();
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&cols).expect("in-memory write");
        for row in &self.results {
            w.write_record(cols.iter().map(|c| row.get(c).map_or("", String::as_str)))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let _ = writeln!(out, "{} ({})", self.command, params.join(", "));
        if !self.flags.is_empty() {
            let flags: Vec<String> = self.flags.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "flags: {}", flags.join(" "));
        }
        out.push('\n');

        let cols = self.columns();
        let grid: Vec<Vec<String>> = if self.results.len() == 1 {
            let row = &self.results[0];
            std::iter::once(vec!["field".to_string(), "value".to_string()])
                .chain(cols.iter().map(|c| vec![c.clone(), row[c].clone()]))
                .collect()
        } else {
            std::iter::once(cols.clone())
                .chain(self.results.iter().map(|row| {
                    cols.iter()
                        .map(|c| row.get(c).cloned().unwrap_or_default())
                        .collect()
                }))
                .collect()
        };
        if grid.is_empty() || grid[0].is_empty() {
            return out;
        }
        let widths: Vec<usize> = (0..grid[0].len())
            .map(|j| grid.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
            .collect();
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join(" | ")
                .trim_end()
                .to_string()
        };
        let _ = writeln!(out, "{}", line(&grid[0]));
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        let _ = writeln!(out, "{}", rule.join("-+-"));
        for r in &grid[1..] {
            let _ = writeln!(out, "{}", line(r));
        }
        out
    }
}

/// Reads back the result rows of a CSV rendering.
pub fn parse_csv(text: &str) -> Result<Vec<Row>, csv::Error> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers()?.clone();
    rdr.records()
        .map(|rec| {
            let rec = rec?;
            Ok(headers
                .iter()
                .zip(rec.iter())
                .map(|(h, v)| (h.to_string(), v.to_string()))
                .collect())
        })
        .collect()
}

/// Reads back the result rows of a table rendering. Cells must not contain `|`.
pub fn parse_table(text: &str) -> Option<Vec<Row>> {
    let lines: Vec<&str> = text.lines().collect();
    let rule = lines
        .iter()
        .position(|l| !l.is_empty() && l.chars().all(|ch| ch == '-' || ch == '+'))?;
    let split = |l: &str| -> Vec<String> { l.split('|').map(|c| c.trim().to_string()).collect() };
    let header = split(lines.get(rule.checked_sub(1)?)?);
    let body: Vec<Vec<String>> = lines[rule + 1..]
        .iter()
        .map(|l| {
            let mut cells = split(l);
            cells.resize(header.len(), String::new());
            cells
        })
        .collect();
    if header == ["field", "value"] {
        return Some(vec![body
            .into_iter()
            .map(|c| (c[0].clone(), c[1].clone()))
            .collect()]);
    }
    Some(
        body.into_iter()
            .map(|cells| header.iter().cloned().zip(cells).collect())
            .collect(),
    )
}
