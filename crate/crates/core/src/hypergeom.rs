//! MY through the Gauss hypergeometric function:
//!
//! ```text
//! MY(x) = 1 / (3·F(1/3, 2/3; 1/2; 1 − 27x/2))                        (a)
//!       = 1 / (3·(27x/2)^{−2/3}·F(1/6, 2/3; 1/2; 1 − 2/(27x)))        (b)
//! ```
//!
//! (b) is the Kummer transform `F(a,b;c;z) = (1−z)^{−b} F(c−a, b; c; z/(z−1))`
//! of (a). Only the power series is implemented, so evaluation picks whichever
//! of the two arguments is smaller in magnitude: (a) for `x ≤ 2/27`, (b) above.
//! For `x` where even (b) converges slowly, the argument is first reduced with
//! `MY(x) = √(6x) / (3·MY(√(x/54) + 1/27) + 1)`.

use num_rational::Rational64;

use crate::closed_form::{EvalResult, Method};
use crate::error::{finite, Error, Result};
use crate::{ONE_27, TWO_27};

pub const DEFAULT_MAX_TERMS: usize = 20_000;
pub const DEFAULT_TARGET_TOL: f64 = 1e-12;

/// Supported window of [`my_hyper`].
pub const WINDOW: (f64, f64) = (1e-3, 1e4);

/// Arguments larger than this in magnitude trigger the `√(x/54) + 1/27` reduction.
const ROUTE_LIMIT: f64 = 0.9;

/// `F(a, b; c; z)` with the summation controls.
#[derive(Debug, Clone, PartialEq)]
pub struct HypergeometricSpec {
    pub a: Rational64,
    pub b: Rational64,
    pub c: Rational64,
    pub z: f64,
    pub max_terms: usize,
    pub target_tol: f64,
}

impl HypergeometricSpec {
    pub fn new(a: Rational64, b: Rational64, c: Rational64, z: f64) -> Self {
        HypergeometricSpec {
            a,
            b,
            c,
            z,
            max_terms: DEFAULT_MAX_TERMS,
            target_tol: DEFAULT_TARGET_TOL,
        }
    }

    /// `F(1/3, 2/3; 1/2; 1 − 27x/2)`.
    pub fn my_direct(x: f64) -> Self {
        Self::new(ratio(1, 3), ratio(2, 3), ratio(1, 2), 1.0 - 13.5 * x)
    }
}

fn ratio(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Result of summing the series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    pub terms: usize,
    /// Whether the last term fell below `target_tol·|sum|`.
    pub achieved_tol: bool,
}

/// Neumaier's compensated sum.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

fn validate(spec: &HypergeometricSpec) -> Result<()> {
    finite("gauss_2f1", spec.z)?;
    if spec.z.abs() >= 1.0 {
        return Err(Error::domain("gauss_2f1", spec.z, "series needs |z| < 1"));
    }
    if spec.c.is_integer() && spec.c <= Rational64::from_integer(0) {
        return Err(Error::domain(
            "gauss_2f1",
            to_f64(spec.c),
            "c must not be a nonpositive integer",
        ));
    }
    if spec.max_terms == 0 {
        return Err(Error::domain("gauss_2f1", 0.0, "max_terms must be at least 1"));
    }
    Ok(())
}

/// Sums exactly `terms` terms (or fewer if the series terminates). Never fails
/// on slow convergence; `achieved_tol` reports whether it was reached.
pub fn partial_sum(spec: &HypergeometricSpec, terms: usize) -> Result<SeriesSum> {
    validate(spec)?;
    Ok(sum_series(spec, terms))
}

fn sum_series(spec: &HypergeometricSpec, max_terms: usize) -> SeriesSum {
    let (a, b, c) = (to_f64(spec.a), to_f64(spec.b), to_f64(spec.c));
    let mut acc = CompensatedSum::default();
    let mut term = 1.0;
    acc.add(term);
    let mut terms = 1;
    while terms < max_terms {
        let n = (terms - 1) as f64;
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * spec.z;
        acc.add(term);
        terms += 1;
        if term.abs() < spec.target_tol * acc.value().abs() {
            return SeriesSum {
                value: acc.value(),
                terms,
                achieved_tol: true,
            };
        }
    }
    SeriesSum {
        value: acc.value(),
        terms,
        achieved_tol: max_terms == 1 && spec.z == 0.0,
    }
}

/// `Σ (a)ₙ(b)ₙ/(c)ₙ · zⁿ/n!` for `|z| < 1`, until a term drops below
/// `target_tol·|sum|`.
pub fn gauss_2f1(spec: &HypergeometricSpec) -> Result<SeriesSum> {
    validate(spec)?;
    if spec.z == 0.0 {
        return Ok(SeriesSum {
            value: 1.0,
            terms: 1,
            achieved_tol: true,
        });
    }
    let s = sum_series(spec, spec.max_terms);
    if s.achieved_tol {
        Ok(s)
    } else {
        Err(Error::NotConverged {
            terms: s.terms,
            partial_sum: s.value,
        })
    }
}

/// `F(a, b; c; z) = (1 − z)^{−b}·F(c − a, b; c; z/(z − 1))`. Returns the
/// transformed spec and the prefactor `(1 − z)^{−b}`.
pub fn kummer_transform(spec: &HypergeometricSpec) -> Result<(HypergeometricSpec, f64)> {
    let z = finite("kummer_transform", spec.z)?;
    if z >= 1.0 {
        return Err(Error::domain("kummer_transform", z, "requires z < 1"));
    }
    let prefactor = (1.0 - z).powf(-to_f64(spec.b));
    let transformed = HypergeometricSpec {
        a: spec.c - spec.a,
        b: spec.b,
        c: spec.c,
        z: z / (z - 1.0),
        max_terms: spec.max_terms,
        target_tol: spec.target_tol,
    };
    Ok((transformed, prefactor))
}

/// Which series produced a value of `u + v = 1/MY(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    /// `3·F(1/3, 2/3; 1/2; 1 − 27x/2)`
    Direct,
    /// `3·(27x/2)^{−2/3}·F(1/6, 2/3; 1/2; 1 − 2/(27x))`
    Kummer,
}

/// `u + v = 1/MY(x)` from one series, with the representation used and the
/// number of terms summed.
pub fn reciprocal_my(x: f64) -> Result<(f64, Representation, usize)> {
    let direct = HypergeometricSpec::my_direct(x);
    let (kummer, prefactor) = kummer_transform(&direct)?;
    if direct.z.abs() <= kummer.z.abs() {
        let s = gauss_2f1(&direct)?;
        Ok((3.0 * s.value, Representation::Direct, s.terms))
    } else {
        let s = gauss_2f1(&kummer)?;
        Ok((3.0 * prefactor * s.value, Representation::Kummer, s.terms))
    }
}

fn my_series(x: f64, depth: u32) -> Result<(f64, usize)> {
    let smallest = (1.0 - 13.5 * x).abs().min((1.0 - 2.0 / (27.0 * x)).abs());
    if smallest > ROUTE_LIMIT && x > TWO_27 && depth < 8 {
        let (w, terms) = my_series((x / 54.0).sqrt() + ONE_27, depth + 1)?;
        return Ok(((6.0 * x).sqrt() / (3.0 * w + 1.0), terms));
    }
    let (uv, _, terms) = reciprocal_my(x)?;
    Ok((1.0 / uv, terms))
}

/// MY(x) from the hypergeometric representation, for `x` in [`WINDOW`].
/// `iterations` reports the number of series terms summed.
pub fn my_hyper(x: f64) -> Result<EvalResult> {
    let x = finite("my_hyper", x)?;
    if !(WINDOW.0..=WINDOW.1).contains(&x) {
        return Err(Error::Unsupported {
            op: "my_hyper",
            x,
            lo: WINDOW.0,
            hi: WINDOW.1,
        });
    }
    let (value, terms) = my_series(x, 0)?;
    Ok(EvalResult {
        x,
        value,
        method: Method::Hypergeometric,
        iterations: terms,
        error_bound: 0.0,
    })
}
