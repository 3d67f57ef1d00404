//! The `mycubic` command line.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or domain error.

use std::io::Write;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::canonical::f;
use crate::closed_form::{bounds, my_closed, EvalResult};
use crate::error::Error;
use crate::fixed_point::{certified_bound, iterate_values, m0, my_fixed};
use crate::format::{fixed10, json_document, sci3, Csv, Format, TextTable};
use crate::hypergeom::my_hyper;
use crate::oracle::my_oracle;
use crate::solver::{
    solve_depressed, solve_depressed_iterative, solve_viete, DepressedCubic, GeneralCubic, RootKind, RootSet,
};
use crate::tables::{self, Reference, TableName};
use crate::verify::{self, VerifyConfig};
use crate::Method;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "mycubic", version, about = "Evaluate MY and solve real cubic equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate MY(x)
    Eval(EvalArgs),
    /// Solve a depressed or general cubic
    Solve(SolveArgs),
    /// Regenerate one of the reference iteration tables
    Table(TableArgs),
    /// Run the invariant suite
    Verify(VerifyArgs),
    /// Emit grid data for plotting
    PlotData(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvalMethod {
    Closed,
    Fixed,
    Hyper,
    Oracle,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct EvalArgs {
    x: f64,
    #[arg(long, value_enum, default_value_t = EvalMethod::Closed)]
    method: EvalMethod,
    /// Fixed-point iterations (fixed method)
    #[arg(long)]
    iterations: Option<usize>,
    /// Target accuracy (fixed and oracle methods)
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveMethod {
    My,
    Viete,
    Both,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
#[command(group(ArgGroup::new("equation").required(true).args(["depressed", "general"])))]
struct SolveArgs {
    /// y^3 + p y + q = 0
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    depressed: Option<Vec<f64>>,
    /// a x^3 + b x^2 + c x + d = 0
    #[arg(long, num_args = 4, value_names = ["A", "B", "C", "D"])]
    general: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value_t = SolveMethod::My)]
    method: SolveMethod,
    /// Replace MY by n fixed-point iterations
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Args)]
struct TableArgs {
    name: TableName,
    /// Closed-form evaluation the error columns are measured against
    #[arg(long, value_enum, default_value_t)]
    reference: Reference,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1000)]
    grid_points: usize,
    #[arg(long, default_value_t = 1e-6)]
    x_min: f64,
    #[arg(long, default_value_t = 1e6)]
    x_max: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Curve {
    My,
    F,
    Bounds,
    M0Error,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct PlotArgs {
    #[arg(long, value_enum)]
    curve: Curve,
    #[arg(long, default_value_t = 0.0)]
    x_min: f64,
    #[arg(long, default_value_t = 2.0)]
    x_max: f64,
    #[arg(long, default_value_t = 100)]
    points: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

/// A failure that maps to exit code 2.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

type CmdResult = Result<(String, i32), Usage>;

/// Parses `args` (program name first) and runs the command, writing results
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(&a),
        Command::Solve(a) => cmd_solve(&a),
        Command::Table(a) => cmd_table(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::PlotData(a) => cmd_plot_data(&a),
    };
    match result {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            code
        }
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn cmd_eval(a: &EvalArgs) -> CmdResult {
    let r: EvalResult = match a.method {
        EvalMethod::Closed => my_closed(a.x)?,
        EvalMethod::Fixed => match (a.iterations, a.tol) {
            (Some(_), Some(_)) => return Err(Usage("give either --iterations or --tol, not both".into())),
            (Some(n), None) => {
                let v = iterate_values(a.x, n)?;
                EvalResult {
                    x: a.x,
                    value: *v.last().expect("n + 1 values"),
                    method: Method::FixedPoint,
                    iterations: n,
                    error_bound: if a.x == 0.0 { 0.0 } else { certified_bound(n) },
                }
            }
            (None, tol) => my_fixed(a.x, tol.unwrap_or(1e-12))?,
        },
        EvalMethod::Hyper => my_hyper(a.x)?,
        EvalMethod::Oracle => my_oracle(a.x, a.tol.unwrap_or(1e-15))?,
    };
    let text = match a.format {
        Format::Text => {
            let mut t = TextTable::new(&["x", "method", "value", "iterations", "error_bound", "residual"]);
            t.push(eval_cells(&r));
            t.render()
        }
        Format::Csv => {
            let mut c = Csv::new(&["x", "method", "value", "iterations", "error_bound", "residual"]);
            c.row(eval_cells(&r));
            c.finish()
        }
        Format::Json => json_document(
            json!({ "x": a.x, "method": method_arg(a.method), "iterations": a.iterations, "tol": a.tol }),
            r,
        ),
    };
    Ok((text, EXIT_OK))
}

fn eval_cells(r: &EvalResult) -> Vec<String> {
    vec![
        r.x.to_string(),
        r.method.name().to_string(),
        fixed10(r.value),
        r.iterations.to_string(),
        sci3(r.error_bound),
        sci3(r.residual()),
    ]
}

fn method_arg(m: EvalMethod) -> &'static str {
    match m {
        EvalMethod::Closed => "closed",
        EvalMethod::Fixed => "fixed",
        EvalMethod::Hyper => "hyper",
        EvalMethod::Oracle => "oracle",
    }
}

/// The polynomial a root set is checked against.
#[derive(Debug, Clone, Copy, Serialize)]
#[serde(untagged)]
enum Equation {
    Depressed(DepressedCubic),
    General(GeneralCubic),
}

impl Equation {
    fn residual(&self, r: f64) -> f64 {
        match self {
            Equation::Depressed(c) => c.residual(r),
            Equation::General(c) => c.eval(r).abs(),
        }
    }

    fn describe(&self) -> String {
        match self {
            Equation::Depressed(c) => format!("y^3 + ({}) y + ({}) = 0", c.p, c.q),
            Equation::General(c) => format!("({}) x^3 + ({}) x^2 + ({}) x + ({}) = 0", c.a, c.b, c.c, c.d),
        }
    }
}

#[derive(Debug, Serialize)]
struct SolveOutput {
    method: &'static str,
    root_set: RootSet,
    residuals: Vec<f64>,
}

fn cmd_solve(a: &SolveArgs) -> CmdResult {
    let (eq, dep, shift) = match (&a.depressed, &a.general) {
        (Some(v), None) => {
            let c = DepressedCubic::new(v[0], v[1])?;
            (Equation::Depressed(c), c, 0.0)
        }
        (None, Some(v)) => {
            let g = GeneralCubic::new(v[0], v[1], v[2], v[3])?;
            let (c, shift) = g.depress()?;
            (Equation::General(g), c, shift)
        }
        _ => return Err(Usage("give exactly one of --depressed or --general".into())),
    };
    let mut outputs = Vec::new();
    if matches!(a.method, SolveMethod::My | SolveMethod::Both) {
        let rs = match a.iterations {
            Some(n) => solve_depressed_iterative(dep, n)?,
            None => solve_depressed(dep)?,
        };
        outputs.push(("my", rs.shifted(shift)));
    }
    if matches!(a.method, SolveMethod::Viete | SolveMethod::Both) {
        match solve_viete(dep) {
            Ok(rs) => outputs.push(("viete", rs.shifted(shift))),
            Err(e) if a.method == SolveMethod::Viete => {
                return Err(Usage(format!("trigonometric roots need three real roots: {e}")))
            }
            Err(_) => {}
        }
    }
    let outputs: Vec<SolveOutput> = outputs
        .into_iter()
        .map(|(method, root_set)| SolveOutput {
            method,
            residuals: root_set.values().iter().map(|&r| eq.residual(r)).collect(),
            root_set,
        })
        .collect();
    let text = match a.format {
        Format::Text => {
            let mut blocks = Vec::new();
            for o in &outputs {
                let rs = &o.root_set;
                let kind = match rs.kind {
                    RootKind::OneReal => "one real root",
                    RootKind::ThreeReal => "three real roots",
                };
                let mut t = TextTable::new(&["root", "value", "residual", "repeated"]).with_title(format!(
                    "{}\nmethod {}: case {}, {}, {kind}",
                    eq.describe(),
                    o.method,
                    rs.case.number(),
                    route_name(rs),
                ));
                for (r, res) in rs.roots.iter().zip(&o.residuals) {
                    t.push(vec![
                        r.label.symbol().into(),
                        fixed10(r.value),
                        sci3(*res),
                        if r.repeated { "yes" } else { "no" }.into(),
                    ]);
                }
                blocks.push(t.render());
            }
            blocks.join("\n")
        }
        Format::Csv => {
            let mut c = Csv::new(&["method", "case", "root", "value", "residual", "repeated"]);
            for o in &outputs {
                for (r, res) in o.root_set.roots.iter().zip(&o.residuals) {
                    c.row([
                        o.method.to_string(),
                        o.root_set.case.number().to_string(),
                        r.label.symbol().to_string(),
                        fixed10(r.value),
                        sci3(*res),
                        r.repeated.to_string(),
                    ]);
                }
            }
            c.finish()
        }
        Format::Json => json_document(json!({ "equation": eq, "iterations": a.iterations }), &outputs),
    };
    Ok((text, EXIT_OK))
}

fn route_name(rs: &RootSet) -> &'static str {
    use crate::solver::Route::*;
    match rs.route {
        CubeRoot => "cube root",
        Transformation1 => "transformation 1",
        Transformation2 => "transformation 2",
        Viete => "trigonometric",
    }
}

fn cmd_table(a: &TableArgs) -> CmdResult {
    let t = tables::build(a.name, a.reference)?;
    Ok((tables::render(&t, a.format), EXIT_OK))
}

fn cmd_verify(a: &VerifyArgs) -> CmdResult {
    let cfg = VerifyConfig {
        grid_points: a.grid_points,
        x_min: a.x_min,
        x_max: a.x_max,
        seed: a.seed,
    };
    let report = verify::run(&cfg)?;
    let code = if report.all_passed() { EXIT_OK } else { EXIT_VERIFY_FAILED };
    let text = match a.format {
        Format::Text => {
            let mut s = String::new();
            for c in &report.checks {
                let status = if c.passed() { "PASS" } else { "FAIL" };
                s.push_str(&format!("{status}  {} ({} cases)\n", c.name, c.cases));
                if let Some(fail) = &c.first_failure {
                    s.push_str(&format!(
                        "      {} failing; first at {}: expected {:e}, got {:e}\n",
                        c.failures, fail.input, fail.expected, fail.got
                    ));
                }
            }
            let passed = report.checks.iter().filter(|c| c.passed()).count();
            s.push_str(&format!("{passed}/{} checks passed\n", report.checks.len()));
            s
        }
        Format::Csv => {
            let mut c = Csv::new(&["check", "passed", "cases", "failures"]);
            for o in &report.checks {
                c.row([
                    format!("\"{}\"", o.name.replace('"', "\"\"")),
                    o.passed().to_string(),
                    o.cases.to_string(),
                    o.failures.to_string(),
                ]);
            }
            c.finish()
        }
        Format::Json => json_document(cfg, &report.checks),
    };
    Ok((text, code))
}

fn cmd_plot_data(a: &PlotArgs) -> CmdResult {
    if !(a.x_min.is_finite() && a.x_max.is_finite() && a.x_min < a.x_max) {
        return Err(Usage(format!("invalid range [{}, {}]", a.x_min, a.x_max)));
    }
    if a.points < 2 {
        return Err(Usage("--points must be at least 2".into()));
    }
    if a.curve != Curve::F && a.x_min < 0.0 {
        return Err(Usage("MY is defined for x >= 0 only".into()));
    }
    let headers: &[&str] = match a.curve {
        Curve::My => &["x", "my"],
        Curve::F => &["x", "f"],
        Curve::Bounds => &["x", "lower", "my", "upper"],
        Curve::M0Error => &["x", "m0", "my", "abs_err"],
    };
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(a.points);
    for i in 0..a.points {
        let x = if i == a.points - 1 {
            a.x_max
        } else {
            a.x_min + (a.x_max - a.x_min) * i as f64 / (a.points - 1) as f64
        };
        rows.push(match a.curve {
            Curve::My => vec![x, my_closed(x)?.value],
            Curve::F => vec![x, f(x)],
            Curve::Bounds => {
                let (lo, hi) = bounds(x)?;
                vec![x, lo, my_closed(x)?.value, hi]
            }
            Curve::M0Error => {
                let (s, z) = (m0(x)?, my_closed(x)?.value);
                vec![x, s, z, (s - z).abs()]
            }
        });
    }
    let text = match a.format {
        Format::Csv => {
            let mut c = Csv::new(headers);
            for r in &rows {
                c.row(r.iter().map(|v| v.to_string()));
            }
            c.finish()
        }
        Format::Text => {
            let mut t = TextTable::new(headers);
            for r in &rows {
                t.push(r.iter().map(|&v| fixed10(v)).collect());
            }
            t.render()
        }
        Format::Json => {
            let records: Vec<serde_json::Map<String, serde_json::Value>> = rows
                .iter()
                .map(|r| headers.iter().map(|h| h.to_string()).zip(r.iter().map(|&v| json!(v))).collect())
                .collect();
            json_document(
                json!({ "curve": format!("{:?}", a.curve).to_lowercase(), "x_min": a.x_min, "x_max": a.x_max, "points": a.points }),
                records,
            )
        }
    };
    Ok((text, EXIT_OK))
}
