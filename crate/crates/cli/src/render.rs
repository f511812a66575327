use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Command, OutputFormat};
use crate::Failure;

/// Output of one command before formatting: a text table for human and CSV
/// output, JSON records, an optional summary, and the failures.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub records: Vec<Value>,
    pub summary: Option<Value>,
    pub failures: Vec<Failure>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            ..Table::default()
        }
    }

    pub fn push(&mut self, row: Vec<String>, record: impl Serialize) {
        self.rows.push(row);
        self.records
            .push(serde_json::to_value(record).expect("record serializes"));
    }

    pub fn render(&self, format: OutputFormat, command: Command) -> String {
        match format {
            OutputFormat::Json => self.render_json(command),
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Human => self.render_human(),
        }
    }

    fn render_json(&self, command: Command) -> String {
        let name = clap::ValueEnum::to_possible_value(&command)
            .expect("no skipped variants")
            .get_name()
            .to_string();
        let doc = json!({
            "command": name,
            "passed": self.failures.is_empty(),
            "summary": self.summary.clone().unwrap_or(Value::Null),
            "records": self.records,
            "failures": self.failures,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }

    fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if !self.headers.is_empty() {
            w.write_record(&self.headers).expect("write to memory");
        }
        for row in &self.rows {
            w.write_record(row).expect("write to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
    }

    fn render_human(&self) -> String {
        let mut out = String::new();
        if !self.headers.is_empty() {
            let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
            for row in &self.rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                    .collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(&self.headers));
            for row in &self.rows {
                out.push_str(&line(row));
            }
        }
        if let Some(Value::Object(summary)) = &self.summary {
            let parts: Vec<String> = summary.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!("summary: {}\n", parts.join(" ")));
        }
        for f in &self.failures {
            out.push_str(&format!("FAIL [{}] {}\n", f.kind, f.message));
        }
        out
    }
}
