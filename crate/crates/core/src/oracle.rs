//! Reference values by plain bisection on monotonic intervals.
//!
//! Nothing here shares code with the closed form, the fixed-point iteration or
//! the hypergeometric path, so it can serve as ground truth for all of them.

use serde::{Deserialize, Serialize};

use crate::canonical::{classify_target, f, Scenario};
use crate::closed_form::{check_nonneg, CanonicalRoots, EvalResult, Method, DOUBLE_ROOT_TOL};
use crate::error::{finite, Error, Result};
use crate::TWO_27;

/// Iteration cap for every bisection.
pub const MAX_BISECTIONS: usize = 200;

/// Smallest bracket width accepted.
pub const MIN_TOL: f64 = 1e-15;

/// An interval on which a monotonic function crosses `target`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub target: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, target: f64) -> Self {
        debug_assert!(lo < hi);
        Bracket { lo, hi, target }
    }

    /// Bisects until the bracket is at most `tol` wide, the midpoint stops
    /// moving, or [`MAX_BISECTIONS`] steps have run. Works for increasing and
    /// decreasing `func` alike. Returns the midpoint and the step count.
    pub fn solve(self, func: impl Fn(f64) -> f64, tol: f64) -> (f64, usize) {
        let (mut lo, mut hi) = (self.lo, self.hi);
        let lo_side = func(lo) <= self.target;
        let mut steps = 0;
        while steps < MAX_BISECTIONS && hi - lo > tol {
            let mid = lo + 0.5 * (hi - lo);
            if mid <= lo || mid >= hi {
                break;
            }
            if (func(mid) <= self.target) == lo_side {
                lo = mid;
            } else {
                hi = mid;
            }
            steps += 1;
        }
        (lo + 0.5 * (hi - lo), steps)
    }
}

fn check_tol(op: &'static str, tol: f64) -> Result<f64> {
    if tol >= MIN_TOL && tol.is_finite() {
        Ok(tol)
    } else {
        Err(Error::domain(op, tol, "tolerance must be at least 1e-15"))
    }
}

fn my_bracket(x: f64) -> Bracket {
    Bracket::new(0.0, (2.0 * x).cbrt().max(0.0) + 1.0, x)
}

/// MY(x) by bisection of `f` on `[0, max(1, ∛(2x) + 1)]`.
pub fn my_bisect(x: f64, tol: f64) -> Result<f64> {
    let x = check_nonneg("my_bisect", x)?;
    let tol = check_tol("my_bisect", tol)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    Ok(my_bracket(x).solve(f, tol).0)
}

/// [`my_bisect`] wrapped as an [`EvalResult`]; `iterations` counts bisection steps.
pub fn my_oracle(x: f64, tol: f64) -> Result<EvalResult> {
    let x = check_nonneg("my_oracle", x)?;
    let tol = check_tol("my_oracle", tol)?;
    let (value, iterations) = if x == 0.0 {
        (0.0, 0)
    } else {
        my_bracket(x).solve(f, tol)
    };
    Ok(EvalResult {
        x,
        value,
        method: Method::Oracle,
        iterations,
        error_bound: 0.0,
    })
}

/// Every real root of `f(z) = x`, found separately on `(−∞, −2/3]`,
/// `[−2/3, 0]` and `[0, ∞)`, ascending.
pub fn canonical_roots_bisect(x: f64, tol: f64) -> Result<CanonicalRoots> {
    let x = finite("canonical_roots_bisect", x)?;
    let tol = check_tol("canonical_roots_bisect", tol)?;
    let scenario = classify_target(x);
    let mut roots = Vec::with_capacity(3);
    if x <= TWO_27 {
        let lo = -2.0 - (2.0 * x.min(0.0).abs()).cbrt();
        roots.push(Bracket::new(lo, -2.0 / 3.0, x).solve(f, tol).0);
    }
    if (0.0..=TWO_27).contains(&x) {
        roots.push(Bracket::new(-2.0 / 3.0, 0.0, x).solve(f, tol).0);
    }
    if x >= 0.0 {
        roots.push(my_bracket(x).solve(f, tol).0);
    }
    roots.sort_by(f64::total_cmp);
    let double = if scenario == Scenario::ThreeReal {
        let low_pair = TWO_27 - x <= DOUBLE_ROOT_TOL;
        let high_pair = x <= DOUBLE_ROOT_TOL;
        vec![low_pair, low_pair || high_pair, high_pair]
    } else {
        vec![false]
    };
    Ok(CanonicalRoots {
        scenario,
        roots,
        double,
    })
}

/// Real roots of `y³ + py + q = 0` by bisection between the critical points
/// `±√(−p/3)`, ascending. Coinciding roots appear once per bracketing interval.
pub fn depressed_roots_bisect(p: f64, q: f64, tol: f64) -> Result<Vec<f64>> {
    let p = finite("depressed_roots_bisect", p)?;
    let q = finite("depressed_roots_bisect", q)?;
    let tol = check_tol("depressed_roots_bisect", tol)?;
    let poly = |y: f64| y * (y * y + p) + q;
    // Fujiwara bound for monic y³ + py + q, with slack
    let bound = 2.0 * p.abs().sqrt().max((0.5 * q.abs()).cbrt()) + 1.0;
    if p >= 0.0 {
        return Ok(vec![Bracket::new(-bound, bound, 0.0).solve(poly, tol).0]);
    }
    let s = (-p / 3.0).sqrt();
    let (at_max, at_min) = (poly(-s), poly(s));
    let mut roots = Vec::with_capacity(3);
    if at_max >= 0.0 {
        roots.push(Bracket::new(-bound, -s, 0.0).solve(poly, tol).0);
    }
    if at_max >= 0.0 && at_min <= 0.0 {
        roots.push(Bracket::new(-s, s, 0.0).solve(poly, tol).0);
    }
    if at_min <= 0.0 {
        roots.push(Bracket::new(s, bound, 0.0).solve(poly, tol).0);
    }
    Ok(roots)
}

/// Adaptive Simpson quadrature of `func` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate(func: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        func: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (func(lm), func(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(func, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + recurse(func, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let (fa, fb, fm) = (func(a), func(b), func(0.5 * (a + b)));
    let whole = simpson(fa, fm, fb, a, b);
    recurse(&func, a, b, fa, fm, fb, whole, tol, 50)
}
