use std::collections::BTreeMap;
use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Rows of decimal strings under named columns.
#[derive(Debug, Clone, Serialize)]
pub struct Payload {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// One command's result: what ran, with which inputs, and the table it produced.
#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub kind: String,
    pub parameters: BTreeMap<String, String>,
    pub payload: Payload,
}

impl OutputRecord {
    pub fn new(kind: &str, columns: &[&str]) -> Self {
        OutputRecord {
            kind: kind.to_string(),
            parameters: BTreeMap::new(),
            payload: Payload {
                columns: columns.iter().map(|c| c.to_string()).collect(),
                rows: Vec::new(),
            },
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn row<I, T>(&mut self, cells: I)
    where
        I: IntoIterator<Item = T>,
        T: ToString,
    {
        let row: Vec<String> = cells.into_iter().map(|c| c.to_string()).collect();
        debug_assert_eq!(row.len(), self.payload.columns.len());
        self.payload.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Table => self.write_table(out),
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                out.write_all(b"\n")
            }
        }
    }

    fn write_table(&self, out: &mut dyn Write) -> io::Result<()> {
        let cols = &self.payload.columns;
        let mut widths: Vec<usize> = cols.iter().map(String::len).collect();
        for row in &self.payload.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        writeln!(out, "{}", line(cols))?;
        for row in &self.payload.rows {
            writeln!(out, "{}", line(row))?;
        }
        Ok(())
    }

    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.payload.columns)?;
        for row in &self.payload.rows {
            w.write_record(row)?;
        }
        w.flush()
    }
}
