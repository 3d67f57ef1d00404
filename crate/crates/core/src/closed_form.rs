//! Closed-form evaluation of MY and the identities built on it.
//!
//! With `u = x − 1/27`:
//!
//! * `x ≥ 2/27`: `MY(x) = −1/3 + ∛(u + √(u² − 1/27²)) + ∛(u − √(u² − 1/27²))`
//! * `x < 2/27`: `MY(x) = −1/3 + (2/3)·cos(arccos(27u)/3)`
//!
//! The radical branch is evaluated through the conjugate product
//! `(u + s)(u − s) = 1/729`, so `∛(u − s) = 1/(9·∛(u + s))`, with
//! `s² = x(x − 2/27)`. For `x < 1/27` the trigonometric branch uses
//! `arccos(27u) = π − 2·asin(√(27x/2))`, which keeps full relative accuracy as
//! `x → 0`. [`my_closed_literal`] evaluates the formulas exactly as printed.

use serde::{Deserialize, Serialize};

use crate::canonical::{self, classify_target, Scenario};
use crate::error::{finite, Error, Result};
use crate::{ONE_27, TWO_27};

/// Which evaluation path produced an [`EvalResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedRadical,
    ClosedTrig,
    FixedPoint,
    Hypergeometric,
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ClosedRadical => "closed-radical",
            Method::ClosedTrig => "closed-trig",
            Method::FixedPoint => "fixed-point",
            Method::Hypergeometric => "hypergeometric",
            Method::Oracle => "oracle",
        }
    }
}

/// A value of MY together with how it was obtained.
///
/// `error_bound` is a certified absolute bound for the fixed-point path and
/// `0.0` (machine precision) for every other method.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub x: f64,
    pub value: f64,
    pub method: Method,
    pub iterations: usize,
    pub error_bound: f64,
}

impl EvalResult {
    /// `|f(value) − x|`.
    pub fn residual(&self) -> f64 {
        (canonical::f(self.value) - self.x).abs()
    }
}

/// Real roots of `f(z) = x` in ascending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CanonicalRoots {
    pub scenario: Scenario,
    /// Ascending; for `ThreeReal` this is `[z₂, z₃, z₁]`.
    pub roots: Vec<f64>,
    /// `double[i]` marks `roots[i]` as one of a coinciding pair.
    pub double: Vec<bool>,
}

/// Tolerance on `x` for flagging the coinciding roots at `x ∈ {0, 2/27}`.
pub const DOUBLE_ROOT_TOL: f64 = 1e-12;

pub(crate) fn check_nonneg(op: &'static str, x: f64) -> Result<f64> {
    let x = finite(op, x)?;
    if x < 0.0 {
        return Err(Error::domain(op, x, "argument must be nonnegative"));
    }
    Ok(x)
}

/// MY(x) for `x ≥ 0`, no validation. Returns the branch that fired.
pub(crate) fn my_kernel(x: f64) -> (f64, Method) {
    if x >= TWO_27 {
        (radical_branch(x), Method::ClosedRadical)
    } else {
        (trig_branch(x.max(0.0)), Method::ClosedTrig)
    }
}

/// MY(x) for `x ≥ 0`; negative rounding noise is treated as 0.
#[inline]
pub(crate) fn my(x: f64) -> f64 {
    my_kernel(x).0
}

fn radical_branch(x: f64) -> f64 {
    // x ≥ 2/27 makes x − 2/27 exact and nonnegative; the clamp covers callers
    // that reach here through rounding at the seam.
    let s = x.sqrt() * (x - TWO_27).max(0.0).sqrt();
    let u = x - ONE_27;
    let c = if x < 1e300 {
        (u + s).cbrt()
    } else {
        2f64.cbrt() * (0.5 * u + 0.5 * s).cbrt()
    };
    -1.0 / 3.0 + c + 1.0 / (9.0 * c)
}

fn trig_branch(x: f64) -> f64 {
    if x >= ONE_27 {
        let arg = (27.0 * x - 1.0).clamp(-1.0, 1.0);
        -1.0 / 3.0 + (2.0 / 3.0) * (arg.acos() / 3.0).cos()
    } else {
        // θ/3 = π/3 − φ with φ = (2/3)·asin(√(27x/2))
        let phi = (2.0 / 3.0) * (13.5 * x).sqrt().min(1.0).asin();
        let half = (0.5 * phi).sin();
        phi.sin() / 3f64.sqrt() - (2.0 / 3.0) * half * half
    }
}

/// MY(x) by the closed form: radical branch for `x ≥ 2/27`, trigonometric below.
pub fn my_closed(x: f64) -> Result<EvalResult> {
    let x = check_nonneg("my_closed", x)?;
    let (value, method) = my_kernel(x);
    Ok(EvalResult {
        x,
        value,
        method,
        iterations: 0,
        error_bound: 0.0,
    })
}

/// The closed form evaluated term by term exactly as printed, including the
/// cancellation in `∛(u − √(u² − 1/27²))` for large `x`.
///
/// Published reference tables were computed this way; use [`my_closed`] for
/// anything else.
pub fn my_closed_literal(x: f64) -> Result<f64> {
    let x = check_nonneg("my_closed_literal", x)?;
    let u = x - ONE_27;
    if x >= TWO_27 {
        let s = (u * u - ONE_27 * ONE_27).max(0.0).sqrt();
        Ok(-1.0 / 3.0 + (u + s).cbrt() + (u - s).cbrt())
    } else {
        let arg = (27.0 * u).clamp(-1.0, 1.0);
        Ok(-1.0 / 3.0 + (2.0 / 3.0) * (arg.acos() / 3.0).cos())
    }
}

/// The single-fraction radical form
/// `MY(x) = ∛(2x(x − √(x(x − 2/27)))) / (1/3 + ∛((x − 1/27) − √(x(x − 2/27))))`
/// valid for `x ≥ 2/27`.
pub fn my_radical_alt(x: f64) -> Result<f64> {
    let x = finite("my_radical_alt", x)?;
    if x < TWO_27 {
        return Err(Error::domain("my_radical_alt", x, "requires x >= 2/27"));
    }
    let s = x.sqrt() * (x - TWO_27).sqrt();
    // x − s = (2x/27)/(x + s) and (x − 1/27) − s = (1/729)/((x − 1/27) + s)
    let numerator = ((4.0 / 27.0) * x * (x / (x + s))).cbrt();
    let denominator = 1.0 / 3.0 + ((1.0 / 729.0) / ((x - ONE_27) + s)).cbrt();
    Ok(numerator / denominator)
}

/// `MY′(x) = 2/(3·MY(x)² + 2·MY(x))` for `x > 0`.
pub fn my_derivative(x: f64) -> Result<f64> {
    let x = finite("my_derivative", x)?;
    if x <= 0.0 {
        return Err(Error::domain(
            "my_derivative",
            x,
            "derivative diverges at 0; requires x > 0",
        ));
    }
    let z = my(x);
    Ok(2.0 / (z * (3.0 * z + 2.0)))
}

/// `∫₀ˣ MY(t) dt = (3/4)·x·MY(x) − x/12 + MY(x)²/24`.
pub fn my_antiderivative(x: f64) -> Result<f64> {
    let x = check_nonneg("my_antiderivative", x)?;
    let z = my(x);
    Ok(0.75 * x * z - x / 12.0 + z * z / 24.0)
}

/// `(√(2x/(1 + x^{2/5})), x^{2/5})`, which bracket MY(x).
pub fn bounds(x: f64) -> Result<(f64, f64)> {
    let x = check_nonneg("bounds", x)?;
    let upper = x.powf(0.4);
    let lower = (2.0 * x / (1.0 + upper)).sqrt();
    Ok((lower, upper))
}

/// All real roots of `f(z) = x`, ascending.
///
/// * `x > 2/27`: `{MY(x)}`
/// * `x < 0`: `{−2/3 − MY(2/27 − x)}`
/// * otherwise `z₂ = −2/3 − MY(2/27 − x)`, `z₃ = MY(2/27 − x) − MY(x) − 1/3`,
///   `z₁ = MY(x)` with `z₂ ≤ z₃ ≤ z₁`.
pub fn canonical_roots(x: f64) -> Result<CanonicalRoots> {
    let x = canonical::check_target("canonical_roots", x)?;
    let scenario = classify_target(x);
    let (roots, double) = match scenario {
        Scenario::UniqueAboveMax => (vec![my(x)], vec![false]),
        Scenario::UniqueNegative => (vec![canonical::reflect(my(TWO_27 - x))], vec![false]),
        Scenario::ThreeReal => {
            let z1 = my(x);
            let mirror = my(TWO_27 - x);
            let z2 = canonical::reflect(mirror);
            // third root from the Vieta sum z₁ + z₂ + z₃ = −1
            let z3 = mirror - z1 - 1.0 / 3.0;
            let low_pair = TWO_27 - x <= DOUBLE_ROOT_TOL;
            let high_pair = x <= DOUBLE_ROOT_TOL;
            (
                vec![z2, z3, z1],
                vec![low_pair, low_pair || high_pair, high_pair],
            )
        }
    };
    Ok(CanonicalRoots {
        scenario,
        roots,
        double,
    })
}

/// The two negative roots of `z³ + z² = 2f(z₁)` from the positive root `z₁ ∈ [0, 1/3]`,
/// via the quadratic with sum `−1 − z₁` and product `z₁(1 + z₁)`.
pub fn companion_roots(z1: f64) -> Result<(f64, f64)> {
    let z1 = finite("companion_roots", z1)?;
    if !(0.0..=1.0 / 3.0).contains(&z1) {
        return Err(Error::domain("companion_roots", z1, "requires 0 <= z1 <= 1/3"));
    }
    let half = 0.5 * (1.0 + z1);
    let r = ((1.0 - 3.0 * z1) / (1.0 + z1)).max(0.0).sqrt();
    Ok((-half * (1.0 + r), -half * (1.0 - r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::f;

    fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
        let (a, b) = (lo.ln(), hi.ln());
        (0..n).map(move |i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
    }

    fn v(x: f64) -> f64 {
        my_closed(x).unwrap().value
    }

    #[test]
    fn paper_values() {
        assert!((v(0.01) - 0.1328694292).abs() < 5e-11);
        // printed to 10 places as 12.2745406200; the root is 12.274540620058180…
        assert!((v(1000.0) - 12.27454062005818).abs() < 1e-13);
        assert!((my_closed_literal(1000.0).unwrap() - 12.2745406200).abs() < 5e-11);
        assert_eq!(my_closed(0.01).unwrap().method, Method::ClosedTrig);
        assert_eq!(my_closed(1000.0).unwrap().method, Method::ClosedRadical);
    }

    #[test]
    fn exact_anchors() {
        assert!((v(TWO_27) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(v(0.0), 0.0);
        assert!((v(1.0) - 1.0).abs() < 1e-15);
        assert!((v(18.0) - 3.0).abs() < 1e-14);
        assert!((v(ONE_27) - (3f64.sqrt() - 1.0) / 3.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(my_closed(-1.0).is_err());
        assert!(my_closed(f64::NAN).is_err());
        assert!(my_closed(f64::INFINITY).is_err());
        assert!(my_radical_alt(0.05).is_err());
        assert!(my_derivative(0.0).is_err());
        assert!(my_antiderivative(-1e-3).is_err());
        assert!(companion_roots(0.5).is_err());
        assert!(companion_roots(-0.1).is_err());
    }

    #[test]
    fn inverse_identity_log_grid() {
        for x in log_grid(1e-8, 1e8, 10_000) {
            let z = v(x);
            assert!(z > 0.0);
            assert!((f(z) - x).abs() <= 1e-13 * (1.0 + x), "x = {x}");
        }
    }

    #[test]
    fn residual_consistency() {
        for x in log_grid(1e-10, 1e10, 500) {
            let r = my_closed(x).unwrap();
            assert!(r.residual() <= 1e-14 * (1.0 + x), "x = {x}");
        }
    }

    #[test]
    fn huge_arguments() {
        for x in [1e200, 1e305, f64::MAX] {
            let z = v(x);
            assert!(z.is_finite());
            assert!((z / (2f64.cbrt() * x.cbrt()) - 1.0).abs() < 1e-12, "{x}");
        }
        let tiny = v(1e-300);
        assert!((tiny / (2e-300f64).sqrt() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn branch_seam_continuity() {
        // MY'(2/27) = 2, so the jump across the seam is 4ε up to O(ε²)
        for eps in [1e-12, 1e-10, 1e-8] {
            assert!((v(TWO_27 + eps) - v(TWO_27 - eps) - 4.0 * eps).abs() <= 1e-10);
        }
        assert!((v(ONE_27 - 1e-15) - v(ONE_27)).abs() < 1e-13);
    }

    #[test]
    fn literal_matches_stable_on_moderate_inputs() {
        for x in log_grid(1e-3, 10.0, 200) {
            let lit = my_closed_literal(x).unwrap();
            assert!((lit - v(x)).abs() < 1e-12, "x = {x}");
        }
        // the literal evaluation loses digits to cancellation at large x
        let lit = my_closed_literal(1000.0).unwrap();
        assert!((lit - v(1000.0)).abs() > 1e-12);
        assert!((lit - v(1000.0)).abs() < 1e-9);
    }

    #[test]
    fn radical_alt() {
        assert!((my_radical_alt(TWO_27).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((my_radical_alt(18.0).unwrap() - 3.0).abs() < 1e-14);
        assert!((my_radical_alt(1000.0).unwrap() - 12.2745406200).abs() < 1e-9);
        for x in log_grid(TWO_27, 1e8, 2000) {
            let a = my_radical_alt(x).unwrap();
            assert!((a / v(x) - 1.0).abs() <= 1e-12, "x = {x}");
        }
    }

    #[test]
    fn derivative_values() {
        assert!((my_derivative(TWO_27).unwrap() - 2.0).abs() < 1e-13);
        assert!((my_derivative(1.0).unwrap() - 0.4).abs() < 1e-15);
        assert!((my_derivative(18.0).unwrap() - 2.0 / 33.0).abs() < 1e-15);
    }

    #[test]
    fn antiderivative_values() {
        assert_eq!(my_antiderivative(0.0).unwrap(), 0.0);
        assert!((my_antiderivative(TWO_27).unwrap() - 11.0 / 648.0).abs() < 1e-16);
        assert!((my_antiderivative(1.0).unwrap() - 17.0 / 24.0).abs() < 1e-15);
    }

    #[test]
    fn bound_values() {
        assert_eq!(bounds(0.0).unwrap(), (0.0, 0.0));
        assert_eq!(bounds(1.0).unwrap(), (1.0, 1.0));
        let (lo, hi) = bounds(0.01).unwrap();
        assert!(lo <= 0.1328694292 && 0.1328694292 <= hi);
        assert!((lo - 0.132).abs() < 1e-3 && (hi - 0.158).abs() < 1e-3, "{lo} {hi}");
    }

    #[test]
    fn canonical_roots_boundaries() {
        let r = canonical_roots(TWO_27).unwrap();
        assert_eq!(r.scenario, Scenario::ThreeReal);
        assert!((r.roots[0] + 2.0 / 3.0).abs() < 1e-15);
        assert!((r.roots[1] + 2.0 / 3.0).abs() < 1e-15);
        assert!((r.roots[2] - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(r.double, vec![true, true, false]);

        let r = canonical_roots(0.0).unwrap();
        assert!((r.roots[0] + 1.0).abs() < 1e-15);
        assert!(r.roots[1].abs() < 1e-15 && r.roots[2] == 0.0);
        assert_eq!(r.double, vec![false, true, true]);
    }

    #[test]
    fn canonical_roots_scenarios() {
        // frozen from the bisection oracle
        let r = canonical_roots(0.05).unwrap();
        let want = [-0.8669513, -0.4126056, 0.2795569];
        for (a, b) in r.roots.iter().zip(want) {
            assert!((a - b).abs() < 1e-7, "{a} vs {b}");
        }
        let r = canonical_roots(0.12).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert!(r.roots[0] > 1.0 / 3.0);
        let r = canonical_roots(-0.08).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert!(r.roots[0] < -1.0);
        assert!((f(r.roots[0]) + 0.08).abs() < 1e-15);
    }

    #[test]
    fn canonical_roots_ordering() {
        for i in 0..=1000 {
            let x = TWO_27 * i as f64 / 1000.0;
            let r = canonical_roots(x).unwrap();
            assert!(r.roots[0] <= r.roots[1] && r.roots[1] <= r.roots[2], "x = {x}");
            assert!(r.roots[1] <= 0.0 && r.roots[2] >= 0.0);
            let sum: f64 = r.roots.iter().sum();
            assert!((sum + 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn companion_values() {
        let (a, b) = companion_roots(1.0 / 3.0).unwrap();
        assert!((a + 2.0 / 3.0).abs() < 1e-15 && (b + 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(companion_roots(0.0).unwrap(), (-1.0, 0.0));
        let (a, b) = companion_roots(v(0.05)).unwrap();
        assert!((a + 0.8669513).abs() < 1e-7 && (b + 0.4126056).abs() < 1e-7);
        for i in 0..=500 {
            let z1 = i as f64 / 1500.0;
            let (a, b) = companion_roots(z1).unwrap();
            let r = canonical_roots(f(z1)).unwrap();
            assert!((a - r.roots[0]).abs() < 1e-7 && (b - r.roots[1]).abs() < 1e-7);
        }
    }
}
