//! Real roots of `y³ + py + q = 0` (and of general cubics) read off MY.
//!
//! | case | condition | roots |
//! |------|-----------|-------|
//! | 1 | `p = 0` | `−∛q` |
//! | 2 | `p > 0` | one, through Transformation 1 |
//! | 3 | `p < 0`, `|ξ| > 1` | one, through Transformation 2 |
//! | 4 | `p < 0`, `|ξ| ≤ 1` | three, `γ ≤ β ≤ α` |
//!
//! With `s = √(−p/3)` the case-4 roots are
//!
//! ```text
//! α = s·(3·MY((1+ξ)/27) + 1)
//! β = 3s·(MY((1−ξ)/27) − MY((1+ξ)/27))
//! γ = −s·(3·MY((1−ξ)/27) + 1)
//! ```
//!
//! `β` as written loses all relative accuracy when `|ξ|` is small, so
//! [`solve_depressed`] takes it from the Transformation 1 expression
//! `−q/(p·(2/3 + MY(2(1−ξ²)/27)))`, which names the same root. The iterative
//! solver keeps the difference form so its tables match the formulas above.

use serde::{Deserialize, Serialize};

use crate::canonical::{self, Xi};
use crate::closed_form::{my, my_closed_literal, DOUBLE_ROOT_TOL};
use crate::error::{finite, Error, Result};
use crate::fixed_point;
use crate::TWO_27;

/// `|p|` below this is treated as `p = 0`.
pub const P_ZERO: f64 = 1e-300;

/// Scale factor in the residual acceptance test.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// `y³ + py + q = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DepressedCubic {
    pub p: f64,
    pub q: f64,
}

impl DepressedCubic {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        Ok(DepressedCubic {
            p: finite("DepressedCubic", p)?,
            q: finite("DepressedCubic", q)?,
        })
    }

    pub fn eval(&self, y: f64) -> f64 {
        y * (y * y + self.p) + self.q
    }

    /// `|r³ + pr + q|`.
    pub fn residual(&self, r: f64) -> f64 {
        self.eval(r).abs()
    }

    /// `1e−10·(1 + |p|·|r| + |q|)`.
    pub fn residual_bound(&self, r: f64) -> f64 {
        RESIDUAL_TOL * (1.0 + self.p.abs() * r.abs() + self.q.abs())
    }
}

/// `ax³ + bx² + cx + d = 0` with `a ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralCubic {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl GeneralCubic {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let a = finite("GeneralCubic", a)?;
        if a == 0.0 {
            return Err(Error::domain("GeneralCubic", a, "leading coefficient must be nonzero"));
        }
        Ok(GeneralCubic {
            a,
            b: finite("GeneralCubic", b)?,
            c: finite("GeneralCubic", c)?,
            d: finite("GeneralCubic", d)?,
        })
    }

    /// The depressed cubic in `y = x + b/(3a)` and the shift `b/(3a)`.
    pub fn depress(&self) -> Result<(DepressedCubic, f64)> {
        let (b, c, d) = (self.b / self.a, self.c / self.a, self.d / self.a);
        let shift = b / 3.0;
        let p = c - b * shift;
        let q = (2.0 * shift * shift - c) * shift + d;
        Ok((DepressedCubic::new(p, q)?, shift))
    }

    pub fn eval(&self, x: f64) -> f64 {
        ((self.a * x + self.b) * x + self.c) * x + self.d
    }

    /// `1e−10·(|a||x|³ + |b|x² + |c||x| + |d|)`, the scale of the terms summed
    /// by [`GeneralCubic::eval`].
    pub fn residual_bound(&self, x: f64) -> f64 {
        let ax = x.abs();
        RESIDUAL_TOL
            * (self.a.abs() * ax * ax * ax + self.b.abs() * ax * ax + self.c.abs() * ax + self.d.abs())
                .max(f64::MIN_POSITIVE)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    OneReal,
    ThreeReal,
}

/// Position of a root: `α` is the largest, `γ` the smallest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootLabel {
    Alpha,
    Beta,
    Gamma,
}

impl RootLabel {
    pub fn symbol(self) -> &'static str {
        match self {
            RootLabel::Alpha => "alpha",
            RootLabel::Beta => "beta",
            RootLabel::Gamma => "gamma",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveCase {
    /// `p = 0`
    Case1,
    /// `p > 0`
    Case2,
    /// `p < 0`, `|ξ| > 1`
    Case3,
    /// `p < 0`, `|ξ| ≤ 1`
    Case4,
}

impl SolveCase {
    pub fn number(self) -> u8 {
        match self {
            SolveCase::Case1 => 1,
            SolveCase::Case2 => 2,
            SolveCase::Case3 => 3,
            SolveCase::Case4 => 4,
        }
    }
}

/// How the roots were produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    CubeRoot,
    Transformation1,
    Transformation2,
    Viete,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub value: f64,
    pub label: RootLabel,
    /// Set when the root coincides with another (double or triple root).
    pub repeated: bool,
}

/// Real roots in ascending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub kind: RootKind,
    pub case: SolveCase,
    pub route: Route,
    pub roots: Vec<Root>,
}

impl RootSet {
    fn one(case: SolveCase, route: Route, value: f64, repeated: bool) -> Self {
        RootSet {
            kind: RootKind::OneReal,
            case,
            route,
            roots: vec![Root {
                value,
                label: RootLabel::Alpha,
                repeated,
            }],
        }
    }

    /// From `(α, β, γ)` and the double-root flags `(α = β, β = γ)`.
    fn three(case: SolveCase, route: Route, abg: [f64; 3], doubles: (bool, bool)) -> Self {
        let mut values = abg;
        values.sort_by(f64::total_cmp);
        let [g, b, a] = values;
        let (high, low) = doubles;
        RootSet {
            kind: RootKind::ThreeReal,
            case,
            route,
            roots: vec![
                Root { value: g, label: RootLabel::Gamma, repeated: low },
                Root { value: b, label: RootLabel::Beta, repeated: low || high },
                Root { value: a, label: RootLabel::Alpha, repeated: high },
            ],
        }
    }

    pub fn values(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.value).collect()
    }

    pub fn get(&self, label: RootLabel) -> Option<f64> {
        self.roots.iter().find(|r| r.label == label).map(|r| r.value)
    }

    pub(crate) fn shifted(mut self, by: f64) -> Self {
        for r in &mut self.roots {
            r.value -= by;
        }
        self
    }
}

/// Source of MY values used inside the root formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MyEvaluator {
    Closed,
    /// The closed form evaluated exactly as printed, see [`my_closed_literal`].
    ClosedLiteral,
    /// `Mₙ` from the fixed-point iteration.
    FixedPoint(usize),
}

impl MyEvaluator {
    pub fn eval(self, x: f64) -> Result<f64> {
        let x = x.max(0.0);
        match self {
            MyEvaluator::Closed => Ok(my(x)),
            MyEvaluator::ClosedLiteral => my_closed_literal(x),
            MyEvaluator::FixedPoint(n) => Ok(*fixed_point::iterate_values(x, n)?
                .last()
                .expect("iterate_values returns n + 1 values")),
        }
    }
}

enum Classified {
    PZero,
    PPositive,
    OneNegative(f64),
    /// `ξ` clamped to `[−1, 1]` and the double-root flags `(α = β, β = γ)`.
    Three(f64, (bool, bool)),
}

fn classify(c: DepressedCubic) -> Result<Classified> {
    if c.p.abs() < P_ZERO {
        return Ok(Classified::PZero);
    }
    if c.p > 0.0 {
        return Ok(Classified::PPositive);
    }
    let Xi(x) = canonical::xi(c)?;
    if (x.abs() - 1.0).abs() <= DOUBLE_ROOT_TOL {
        let clamped = x.signum();
        return Ok(Classified::Three(clamped, (clamped < 0.0, clamped > 0.0)));
    }
    if x.abs() > 1.0 {
        Ok(Classified::OneNegative(x))
    } else {
        Ok(Classified::Three(x, (false, false)))
    }
}

fn s_of(p: f64) -> f64 {
    (-p / 3.0).sqrt()
}

/// `t = −q²/(2p³)`, computed as `−(q/p)²/(2p)`.
fn t1(c: DepressedCubic) -> f64 {
    let r = c.q / c.p;
    -0.5 * r * r / c.p
}

fn case2(c: DepressedCubic, eval: MyEvaluator) -> Result<f64> {
    let t = t1(c);
    if !t.is_finite() {
        // p is negligible against q
        return Ok(-c.q.cbrt());
    }
    Ok(c.q / (c.p * (-2.0 / 3.0 - eval.eval(TWO_27 - t)?)))
}

fn case3(c: DepressedCubic, x: f64, eval: MyEvaluator) -> Result<f64> {
    Ok(x.signum() * s_of(c.p) * (3.0 * eval.eval((1.0 + x.abs()) / 27.0)? + 1.0))
}

fn case4(c: DepressedCubic, x: f64, eval: MyEvaluator, literal: bool) -> Result<[f64; 3]> {
    let s = s_of(c.p);
    let up = eval.eval((1.0 + x) / 27.0)?;
    let down = eval.eval((1.0 - x) / 27.0)?;
    let alpha = s * (3.0 * up + 1.0);
    let gamma = -s * (3.0 * down + 1.0);
    let beta = if literal {
        3.0 * s * (down - up)
    } else {
        // 2/27 − t with t = 2ξ²/27
        let mid = eval.eval(2.0 * (1.0 - x) * (1.0 + x) / 27.0)?;
        -c.q / (c.p * (2.0 / 3.0 + mid))
    };
    Ok([alpha, beta, gamma])
}

fn solve_with(c: DepressedCubic, eval: MyEvaluator, literal: bool) -> Result<RootSet> {
    Ok(match classify(c)? {
        Classified::PZero => RootSet::one(SolveCase::Case1, Route::CubeRoot, -c.q.cbrt(), c.q == 0.0),
        Classified::PPositive => RootSet::one(SolveCase::Case2, Route::Transformation1, case2(c, eval)?, false),
        Classified::OneNegative(x) => {
            RootSet::one(SolveCase::Case3, Route::Transformation2, case3(c, x, eval)?, false)
        }
        Classified::Three(x, doubles) => RootSet::three(
            SolveCase::Case4,
            Route::Transformation2,
            case4(c, x, eval, literal)?,
            doubles,
        ),
    })
}

/// All real roots of `y³ + py + q = 0`.
pub fn solve_depressed(c: DepressedCubic) -> Result<RootSet> {
    solve_with(c, MyEvaluator::Closed, false)
}

/// As [`solve_depressed`], with every MY replaced by `Mₙ` and the case-4
/// roots taken literally from the Transformation 2 formulas.
pub fn solve_depressed_iterative(c: DepressedCubic, n: usize) -> Result<RootSet> {
    solve_with(c, MyEvaluator::FixedPoint(n), true)
}

/// The root formulas as written, with MY supplied by `eval`.
pub fn solve_depressed_with(c: DepressedCubic, eval: MyEvaluator) -> Result<RootSet> {
    solve_with(c, eval, true)
}

/// All real roots of `ax³ + bx² + cx + d = 0`, via `x = y − b/(3a)`.
pub fn solve_general(c: GeneralCubic) -> Result<RootSet> {
    let (dep, shift) = c.depress()?;
    Ok(solve_depressed(dep)?.shifted(shift))
}

fn three_real_xi(op: &'static str, c: DepressedCubic) -> Result<f64> {
    let Xi(x) = canonical::xi(c)?;
    if x.abs() > 1.0 + DOUBLE_ROOT_TOL {
        return Err(Error::domain(op, x, "requires |xi| <= 1"));
    }
    Ok(x.clamp(-1.0, 1.0))
}

/// `(α, β, γ)` from the Transformation 2 formulas, as written.
pub fn roots_transform2(c: DepressedCubic) -> Result<(f64, f64, f64)> {
    let x = three_real_xi("roots_transform2", c)?;
    let [a, b, g] = case4(c, x, MyEvaluator::Closed, true)?;
    Ok((a, b, g))
}

/// `(α′, β′, γ′)` from Transformation 1 with `t = −q²/(2p³)`:
///
/// ```text
/// α′ = q/(p·MY(t))
/// β′ = q/(p·(MY(2/27 − t) − MY(t) − 1/3))
/// γ′ = −q/(p·(2/3 + MY(2/27 − t)))
/// ```
pub fn roots_transform1(c: DepressedCubic) -> Result<(f64, f64, f64)> {
    three_real_xi("roots_transform1", c)?;
    if c.q == 0.0 {
        return Err(Error::domain("roots_transform1", c.q, "q must be nonzero"));
    }
    let t = t1(c);
    let (at, rt) = (my(t), my((TWO_27 - t).max(0.0)));
    let (p, q) = (c.p, c.q);
    Ok((q / (p * at), q / (p * (rt - at - 1.0 / 3.0)), -q / (p * (2.0 / 3.0 + rt))))
}

/// Which of `α, β, γ` each of `α′, β′, γ′` equals.
pub fn primed_labels(q: f64) -> [RootLabel; 3] {
    use RootLabel::*;
    if q < 0.0 {
        [Alpha, Gamma, Beta]
    } else {
        [Gamma, Alpha, Beta]
    }
}

/// `tₖ = 2√(−p/3)·cos(arccos(ξ)/3 − 2kπ/3)` for `k = 0, 1, 2`.
pub fn viete_trig_roots(c: DepressedCubic) -> Result<(f64, f64, f64)> {
    let x = three_real_xi("viete_trig_roots", c)?;
    let s2 = 2.0 * s_of(c.p);
    let theta = x.acos() / 3.0;
    let step = 2.0 * std::f64::consts::PI / 3.0;
    Ok((
        s2 * theta.cos(),
        s2 * (theta - step).cos(),
        s2 * (theta - 2.0 * step).cos(),
    ))
}

/// [`viete_trig_roots`] packaged as a [`RootSet`].
pub fn solve_viete(c: DepressedCubic) -> Result<RootSet> {
    let x = three_real_xi("solve_viete", c)?;
    let doubles = if (x.abs() - 1.0).abs() <= DOUBLE_ROOT_TOL {
        (x < 0.0, x > 0.0)
    } else {
        (false, false)
    };
    let (a, b, g) = viete_trig_roots(c)?;
    Ok(RootSet::three(SolveCase::Case4, Route::Viete, [a, b, g], doubles))
}

/// The two case-3 expressions for the single root:
/// `sgn(ξ)·√(−p/3)·(3·MY((1+|ξ|)/27) + 1)` and `q/(p·MY(−q²/(2p³)))`.
pub fn case3_expressions(c: DepressedCubic) -> Result<(f64, f64)> {
    let Xi(x) = canonical::xi(c)?;
    if x.abs() <= 1.0 {
        return Err(Error::domain("case3_expressions", x, "requires |xi| > 1"));
    }
    let first = case3(c, x, MyEvaluator::Closed)?;
    let second = c.q / (c.p * my(t1(c)));
    Ok((first, second))
}
