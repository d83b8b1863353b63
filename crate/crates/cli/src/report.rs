//! Rendering of command results as key-value, CSV or human-readable text.
//!
//! Machine formats print floats with Rust's shortest round-trip
//! representation (at most 17 significant digits); the human format prints 6.

use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Kv,
    Csv,
    Human,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    /// Rendered `;`-separated.
    Nums(Vec<f64>),
    /// Rendered `;`-separated.
    Texts(Vec<String>),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as u64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::Empty, Into::into)
    }
}

pub fn machine_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x}")
    }
}

pub fn human_float(x: f64) -> String {
    if !x.is_finite() {
        return machine_float(x);
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..6).contains(&mag) {
        let decimals = (5 - mag).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.5e}")
    }
}

impl Cell {
    fn render(&self, human: bool) -> String {
        let num = |x: f64| if human { human_float(x) } else { machine_float(x) };
        match self {
            Cell::Num(x) => num(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Nums(v) => v.iter().map(|&x| num(x)).collect::<Vec<_>>().join(";"),
            Cell::Texts(v) => v.join(";"),
            Cell::Empty => String::new(),
        }
    }
}

/// One row of named values.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record {
    pub fields: Vec<(String, Cell)>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Cell>) -> Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Cell>) {
        self.fields.push((key.to_string(), value.into()));
    }
}

/// Records sharing one column layout. In key-value output, multi-record
/// reports prefix each key with the record's first field.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub records: Vec<Record>,
    /// CSV keeps only this many leading columns.
    pub csv_columns: Option<usize>,
}

impl Report {
    pub fn single(record: Record) -> Self {
        Self { records: vec![record], csv_columns: None }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Kv => self.kv(),
            OutputFormat::Csv => self.csv(),
            OutputFormat::Human => self.human(),
        }
    }

    fn kv(&self) -> String {
        let mut out = String::new();
        let prefixed = self.records.len() > 1;
        for r in &self.records {
            let prefix = if prefixed { r.fields.first().map(|(_, c)| c.render(false)) } else { None };
            for (i, (k, v)) in r.fields.iter().enumerate() {
                match &prefix {
                    Some(_) if i == 0 => continue,
                    Some(p) => {
                        let _ = writeln!(out, "{p}.{k}={}", v.render(false));
                    }
                    None => {
                        let _ = writeln!(out, "{k}={}", v.render(false));
                    }
                }
            }
        }
        out
    }

    pub fn csv(&self) -> String {
        let Some(first) = self.records.first() else { return String::new() };
        let width = self.csv_columns.unwrap_or(usize::MAX);
        let mut out = String::new();
        let header: Vec<&str> = first.fields.iter().take(width).map(|(k, _)| k.as_str()).collect();
        let _ = writeln!(out, "{}", header.join(","));
        for r in &self.records {
            let row: Vec<String> = r.fields.iter().take(width).map(|(_, c)| csv_escape(&c.render(false))).collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }

    fn human(&self) -> String {
        let mut out = String::new();
        if self.records.len() == 1 {
            let r = &self.records[0];
            let w = r.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in &r.fields {
                let _ = writeln!(out, "{k:<w$}  {}", v.render(true));
            }
            return out;
        }
        let Some(first) = self.records.first() else { return out };
        let header: Vec<String> = first.fields.iter().map(|(k, _)| k.clone()).collect();
        let rows: Vec<Vec<String>> =
            self.records.iter().map(|r| r.fields.iter().map(|(_, c)| c.render(true)).collect()).collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|i| rows.iter().map(|r| r.get(i).map_or(0, String::len)).max().unwrap_or(0).max(header[i].len()))
            .collect();
        let line = |cells: &[String]| {
            cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
        };
        let _ = writeln!(out, "{}", line(&header));
        for r in &rows {
            let _ = writeln!(out, "{}", line(r));
        }
        out
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats() {
        assert_eq!(machine_float(4.0 / 3.0), "1.3333333333333333");
        assert_eq!(machine_float(f64::NEG_INFINITY), "-inf");
        assert_eq!(human_float(4.0 / 3.0), "1.33333");
        assert_eq!(human_float(0.5), "0.5");
        assert_eq!(human_float(1234567.0), "1.23457e6");
        assert_eq!(human_float(-0.000123456789), "-0.000123457");
    }

    #[test]
    fn layouts() {
        let rep = Report {
            records: vec![
                Record::new().with("theorem", "T1").with("n", 3u64).with("rate", 0.5).with("extra", "x,y"),
                Record::new().with("theorem", "T2").with("n", 4u64).with("rate", 1.0).with("extra", ""),
            ],
            csv_columns: Some(3),
        };
        assert_eq!(rep.render(OutputFormat::Csv), "theorem,n,rate\nT1,3,0.5\nT2,4,1\n");
        assert!(rep.render(OutputFormat::Kv).starts_with("T1.n=3\nT1.rate=0.5\nT1.extra=x,y\n"));
        let single = Report::single(Record::new().with("c2", 4.0 / 3.0).with("v", Cell::Nums(vec![0.5, 0.25])));
        assert_eq!(single.render(OutputFormat::Kv), "c2=1.3333333333333333\nv=0.5;0.25\n");
        assert_eq!(single.render(OutputFormat::Csv), "c2,v\n1.3333333333333333,0.5;0.25\n");
    }
}
