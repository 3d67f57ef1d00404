//! The four reference iteration tables, recomputed on demand.
//!
//! * `my-ex1`: `Mₙ(0.01)` for `n = 0..=5`
//! * `my-ex2`: `Mₙ(1000)` for `n = 0..=2`
//! * `cubic-ex1`: `y³ + y + 1 = 0`, `n = 0..=3`
//! * `cubic-ex2`: `y³ − 3y + 1 = 0`, `n = 0..=5`, one block per root
//!
//! Error columns are measured against the closed form. By default that is the
//! closed form evaluated exactly as printed ([`my_closed_literal`]), whose
//! rounding is what the published error columns reflect; [`Reference::Stable`]
//! switches to the accurate evaluation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::closed_form::{my_closed, my_closed_literal};
use crate::error::Result;
use crate::fixed_point::{iterate_values, IterationTrace, TraceRow};
use crate::format::{fixed10, sci3, Csv, Format, TextTable};
use crate::solver::{solve_depressed_with, DepressedCubic, MyEvaluator, RootLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableName {
    #[serde(rename = "my-ex1")]
    MyEx1,
    #[serde(rename = "my-ex2")]
    MyEx2,
    #[serde(rename = "cubic-ex1")]
    CubicEx1,
    #[serde(rename = "cubic-ex2")]
    CubicEx2,
}

impl TableName {
    pub const ALL: [TableName; 4] = [
        TableName::MyEx1,
        TableName::MyEx2,
        TableName::CubicEx1,
        TableName::CubicEx2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TableName::MyEx1 => "my-ex1",
            TableName::MyEx2 => "my-ex2",
            TableName::CubicEx1 => "cubic-ex1",
            TableName::CubicEx2 => "cubic-ex2",
        }
    }
}

impl fmt::Display for TableName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TableName {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        TableName::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<_> = TableName::ALL.iter().map(|t| t.as_str()).collect();
                format!("unknown table '{s}', expected one of: {}", names.join(", "))
            })
    }
}

/// Which closed-form evaluation the error columns are measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Reference {
    /// The closed form evaluated as printed.
    #[default]
    Literal,
    /// The cancellation-free evaluation used by `my_closed`.
    Stable,
}

/// One block of rows: an iterated quantity and its reference value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    /// `M_n`, `alpha`, `beta` or `gamma`.
    pub symbol: String,
    pub reference: f64,
    pub rows: Vec<TraceRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TableInputs {
    My { x: f64 },
    Cubic { p: f64, q: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: TableName,
    pub reference_kind: Reference,
    pub inputs: TableInputs,
    pub series: Vec<Series>,
}

fn my_reference(x: f64, reference: Reference) -> Result<f64> {
    match reference {
        Reference::Literal => my_closed_literal(x),
        Reference::Stable => Ok(my_closed(x)?.value),
    }
}

fn my_table(name: TableName, x: f64, n: usize, reference: Reference) -> Result<Table> {
    let trace = IterationTrace::against(x, &iterate_values(x, n)?, my_reference(x, reference)?);
    Ok(Table {
        name,
        reference_kind: reference,
        inputs: TableInputs::My { x },
        series: vec![Series {
            symbol: "M_n".into(),
            reference: trace.reference,
            rows: trace.rows,
        }],
    })
}

fn cubic_table(name: TableName, p: f64, q: f64, n: usize, reference: Reference) -> Result<Table> {
    let c = DepressedCubic::new(p, q)?;
    let eval = match reference {
        Reference::Literal => MyEvaluator::ClosedLiteral,
        Reference::Stable => MyEvaluator::Closed,
    };
    let exact = solve_depressed_with(c, eval)?;
    let iterates = (0..=n)
        .map(|k| solve_depressed_with(c, MyEvaluator::FixedPoint(k)))
        .collect::<Result<Vec<_>>>()?;
    let labels: &[RootLabel] = if exact.roots.len() == 3 {
        &[RootLabel::Alpha, RootLabel::Beta, RootLabel::Gamma]
    } else {
        &[RootLabel::Alpha]
    };
    let series = labels
        .iter()
        .map(|&label| {
            let reference = exact.get(label).expect("label present");
            let values: Vec<f64> = iterates
                .iter()
                .map(|r| r.get(label).expect("same case at every n"))
                .collect();
            Series {
                symbol: label.symbol().into(),
                reference,
                rows: IterationTrace::against(0.0, &values, reference).rows,
            }
        })
        .collect();
    Ok(Table {
        name,
        reference_kind: reference,
        inputs: TableInputs::Cubic { p, q },
        series,
    })
}

pub fn build(name: TableName, reference: Reference) -> Result<Table> {
    match name {
        TableName::MyEx1 => my_table(name, 0.01, 5, reference),
        TableName::MyEx2 => my_table(name, 1000.0, 2, reference),
        TableName::CubicEx1 => cubic_table(name, 1.0, 1.0, 3, reference),
        TableName::CubicEx2 => cubic_table(name, -3.0, 1.0, 5, reference),
    }
}

fn headers(s: &Series) -> [String; 4] {
    if s.symbol == "M_n" {
        [
            "n".into(),
            "M_n(x)".into(),
            "|M_n(x)-MY(x)|".into(),
            "|M_n(x)/MY(x)-1|".into(),
        ]
    } else {
        let r = &s.symbol;
        [
            "n".into(),
            format!("{r}_n"),
            format!("|{r}_n-{r}|"),
            format!("|{r}_n/{r}-1|"),
        ]
    }
}

fn title(t: &Table, s: &Series) -> String {
    match t.inputs {
        TableInputs::My { x } => format!("x = {x}, MY(x) = {}", fixed10(s.reference)),
        TableInputs::Cubic { p, q } => {
            format!("p = {p}, q = {q}, {} = {}", s.symbol, fixed10(s.reference))
        }
    }
}

pub fn render_text(t: &Table) -> String {
    let blocks: Vec<String> = t
        .series
        .iter()
        .map(|s| {
            let h = headers(s);
            let h: Vec<&str> = h.iter().map(String::as_str).collect();
            let mut tt = TextTable::new(&h).with_title(title(t, s));
            for r in &s.rows {
                tt.push(vec![r.n.to_string(), fixed10(r.value), sci3(r.abs_err), sci3(r.rel_err)]);
            }
            tt.render()
        })
        .collect();
    blocks.join("\n")
}

pub fn render_csv(t: &Table) -> String {
    let mut csv = Csv::new(&["series", "n", "value", "abs_err", "rel_err"]);
    for s in &t.series {
        for r in &s.rows {
            csv.row([
                s.symbol.clone(),
                r.n.to_string(),
                fixed10(r.value),
                sci3(r.abs_err),
                sci3(r.rel_err),
            ]);
        }
    }
    csv.finish()
}

pub fn render(t: &Table, format: Format) -> String {
    match format {
        Format::Text => render_text(t),
        Format::Csv => render_csv(t),
        Format::Json => crate::format::json_document(
            serde_json::json!({ "table": t.name, "reference": t.reference_kind, "parameters": t.inputs }),
            &t.series,
        ),
    }
}
