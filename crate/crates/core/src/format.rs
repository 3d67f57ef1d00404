//! Number formatting and the text / CSV / JSON renderers shared by the CLI.

use serde::Serialize;
use serde_json::{json, Value};

use crate::VERSION;

/// Output flavour selected with `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

/// `v` with 10 fractional digits. Negative zero prints as zero.
pub fn fixed10(v: f64) -> String {
    fixed(v, 10)
}

pub fn fixed(v: f64, digits: usize) -> String {
    let s = format!("{:.*}", digits, v);
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Scientific notation with 3 significant digits and a signed two-digit
/// exponent, e.g. `7.57e-04`.
pub fn sci3(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    let s = format!("{:.2e}", v);
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// Right-aligned plain-text table.
#[derive(Debug, Clone, Default)]
pub struct TextTable {
    pub title: Option<String>,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl TextTable {
    pub fn new(headers: &[&str]) -> Self {
        TextTable {
            title: None,
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn with_title(mut self, title: impl Into<String>) -> Self {
        self.title = Some(title.into());
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let widths: Vec<usize> = (0..self.headers.len())
            .map(|i| {
                self.rows
                    .iter()
                    .map(|r| r[i].chars().count())
                    .chain(std::iter::once(self.headers[i].chars().count()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let mut out = String::new();
        if let Some(t) = &self.title {
            out.push_str(t);
            out.push('\n');
        }
        out.push_str(&line(&self.headers));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }
}

/// Comma-separated lines with a header row, LF line endings.
#[derive(Debug, Clone, Default)]
pub struct Csv {
    out: String,
}

impl Csv {
    pub fn new(headers: &[&str]) -> Self {
        let mut c = Csv { out: String::new() };
        c.row(headers.iter().map(|h| h.to_string()));
        c
    }

    pub fn row(&mut self, cells: impl IntoIterator<Item = String>) {
        let cells: Vec<String> = cells.into_iter().collect();
        self.out.push_str(&cells.join(","));
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        self.out
    }
}

/// `{"inputs": …, "results": …, "meta": {"version": …}}`, pretty-printed with
/// a trailing newline. Numbers use the shortest representation that parses
/// back to the same `f64`.
pub fn json_document(inputs: impl Serialize, results: impl Serialize) -> String {
    let doc = json!({
        "inputs": to_value(inputs),
        "results": to_value(results),
        "meta": { "version": VERSION },
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn to_value(v: impl Serialize) -> Value {
    // non-finite floats become null
    serde_json::to_value(v).unwrap_or(Value::Null)
}
