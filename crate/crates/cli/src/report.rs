//! Tabular reports and their renderings.

use std::fmt::Write as _;

use anyhow::Result;
use clap::ValueEnum;
use mcount_core::TruncatedQPoly;
use serde_json::Value;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Latex,
    Pretty,
}

/// One table cell with plain and LaTeX renderings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub text: String,
    pub latex: String,
}

impl Cell {
    pub fn poly(p: &TruncatedQPoly) -> Self {
        Cell { text: p.to_string(), latex: format!("${}$", p.to_latex()) }
    }
}

fn escape_latex(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '_' | '&' | '%' | '#' | '$' | '{' | '}' => {
                out.push('\\');
                out.push(c);
            }
            _ => out.push(c),
        }
    }
    out
}

impl From<String> for Cell {
    fn from(text: String) -> Self {
        let latex = escape_latex(&text);
        Cell { text, latex }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::from(s.to_string())
    }
}

macro_rules! cell_from_display {
    ($($t:ty),*) => {$(
        impl From<$t> for Cell {
            fn from(v: $t) -> Self {
                Cell::from(v.to_string())
            }
        }
    )*};
}

cell_from_display!(u32, i32, u64, i64, i128, usize, bool);

/// The result of a command: a table, its JSON form, and whether every check passed.
#[derive(Clone, Debug)]
pub struct Report {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub json: Value,
    pub ok: bool,
}

impl Report {
    pub fn new(columns: &[&str], json: Value) -> Self {
        Report { columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new(), json, ok: true }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)?;
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(|c| c.text.as_str()))?;
                }
                String::from_utf8(w.into_inner()?)?
            }
            Format::Latex => self.render_latex(),
            Format::Pretty => self.render_pretty(),
        })
    }

    fn render_latex(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "\\begin{{tabular}}{{{}}}", "l".repeat(self.columns.len()));
        let head: Vec<String> = self.columns.iter().map(|c| escape_latex(c)).collect();
        let _ = writeln!(s, "{} \\\\", head.join(" & "));
        s.push_str("\\hline\n");
        for row in &self.rows {
            let cells: Vec<&str> = row.iter().map(|c| c.latex.as_str()).collect();
            let _ = writeln!(s, "{} \\\\", cells.join(" & "));
        }
        s.push_str("\\end{tabular}\n");
        s
    }

    fn render_pretty(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for row in &self.rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.text.chars().count());
            }
        }
        let line = |cells: Vec<&str>| {
            let mut l = String::new();
            for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
                if i > 0 {
                    l.push_str("  ");
                }
                let _ = write!(l, "{c:<w$}");
            }
            l.truncate(l.trim_end().len());
            l.push('\n');
            l
        };
        let mut s = line(self.columns.iter().map(|c| c.as_str()).collect());
        for row in &self.rows {
            s.push_str(&line(row.iter().map(|c| c.text.as_str()).collect()));
        }
        s
    }
}
