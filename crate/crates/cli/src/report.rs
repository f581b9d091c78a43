use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Table { name: name.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// Command output: echoed command, `key: value` lines, tables and violation witnesses.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub entries: Vec<(String, String)>,
    pub tables: Vec<Table>,
    pub violations: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), ..Report::default() }
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Csv => self.csv(),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        for (k, v) in &self.entries {
            writeln!(out, "{k}: {v}").unwrap();
        }
        for t in &self.tables {
            writeln!(out, "table: {} ({} rows)", t.name, t.rows.len()).unwrap();
            let mut widths: Vec<usize> = t.header.iter().map(|h| h.len()).collect();
            for row in &t.rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            for row in std::iter::once(&t.header).chain(&t.rows) {
                let cells: Vec<String> =
                    row.iter().zip(&widths).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
                writeln!(out, "  {}", cells.join("  ").trim_end()).unwrap();
            }
        }
        writeln!(out, "violations: {}", self.violations.len()).unwrap();
        for v in &self.violations {
            writeln!(out, "  {v}").unwrap();
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        for (i, t) in self.tables.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            for row in std::iter::once(&t.header).chain(&t.rows) {
                let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
                writeln!(out, "{}", cells.join(",")).unwrap();
            }
        }
        if self.tables.is_empty() {
            writeln!(out, "key,value").unwrap();
            for (k, v) in &self.entries {
                writeln!(out, "{},{}", csv_cell(k), csv_cell(v)).unwrap();
            }
        }
        out
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
