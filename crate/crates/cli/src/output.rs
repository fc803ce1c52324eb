use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

/// Rows of tab-separated cells under a header.
pub struct Tsv {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Tsv {
    pub fn new(header: &[&'static str]) -> Tsv {
        Tsv {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join("\t");
        out.push('\n');
        for r in &self.rows {
            // cells never contain tabs or newlines, so no quoting is needed
            out.push_str(&r.join("\t"));
            out.push('\n');
        }
        out
    }
}

/// Compact JSON with object keys sorted.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    // serde_json::Value keeps objects in a BTreeMap
    let v = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string(&v).expect("serializable");
    s.push('\n');
    s
}

/// A JSON fragment for a TSV cell.
pub fn cell_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(&serde_json::to_value(value).expect("serializable")).expect("serializable")
}

pub fn emit(text: &str, path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}
