//! Approximation of MY using real radicals only.
//!
//! `z = MY(x)` solves `z³ + z² = 2x`. Substituting `z = √(2x/(1+z))` into the
//! completed cube `(z + 1/3)³ = 2x + 1/27 + z/3` makes `z` a fixed point of
//!
//! ```text
//! G(x, y) = ∛(2x + 1/27 + (1/3)·√(2x/(1+y))) − 1/3
//! ```
//!
//! Starting from `M₀(x) = G(x, x^{2/5})` and iterating `Mₙ₊₁ = G(x, Mₙ)` gives
//! `|Mₙ(x) − MY(x)| < C0/Kⁿ` uniformly on `x ≥ 0`, with `C0 = 1/694.061782`.
//! `K = 2/(C1 + C2) ≈ 25.0572` where `C1` bounds `|∂G/∂y|` globally and `C2`
//! bounds it along the curve `y = MY(x)`.
//!
//! Everything between the `radicals-only` markers uses `+ − × ÷`, `√`, `∛`
//! and integer powers; a unit test scans the source to keep it that way.

use serde::{Deserialize, Serialize};

use crate::closed_form::{self, check_nonneg, EvalResult, Method};
use crate::error::{Error, Result};
use crate::ONE_27;

/// `C0`, the certified bound on `|M₀(x) − MY(x)|`, stored as printed.
pub const C0: f64 = 1.0 / 694.061782;

/// `C0'`, the bound on `|M₀(x)/MY(x) − 1|`, as printed.
pub const C0_REL: f64 = 1.1527e-2;

/// Per-iteration shrink factor used in certificates. Slightly below the
/// derived `2/(C1 + C2) ≈ 25.0572`, so the bound is conservative.
pub const K_CERT: f64 = 25.05;

/// Largest iteration count accepted by [`iterate`].
pub const MAX_ITERATIONS: usize = 64;

/// Smallest tolerance accepted by [`my_fixed`].
pub const MIN_TOL: f64 = 1e-15;

/// Constants of the convergence proof, re-derived from their closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceConstants {
    pub c0: f64,
    pub c0_rel: f64,
    pub c1: f64,
    pub c2: f64,
    pub k: f64,
    /// Maximiser of `g(v)`; `C1 = g(v0)`.
    pub v0: f64,
    /// Maximiser of `|∂G/∂y(x, MY(x))|` as a function of `z = MY(x)`.
    pub z_star: f64,
}

/// One row of an iteration table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub n: usize,
    pub value: f64,
    pub abs_err: f64,
    pub rel_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationTrace {
    pub x: f64,
    pub reference: f64,
    pub rows: Vec<TraceRow>,
}

impl IterationTrace {
    /// Builds error columns for `values` (row `n` holds `Mₙ`) against `reference`.
    pub fn against(x: f64, values: &[f64], reference: f64) -> Self {
        let rows = values
            .iter()
            .enumerate()
            .map(|(n, &value)| {
                let abs_err = (value - reference).abs();
                let rel_err = if reference == 0.0 {
                    if value == 0.0 {
                        0.0
                    } else {
                        f64::INFINITY
                    }
                } else {
                    (value / reference - 1.0).abs()
                };
                TraceRow {
                    n,
                    value,
                    abs_err,
                    rel_err,
                }
            })
            .collect();
        IterationTrace { x, reference, rows }
    }

    pub fn last(&self) -> &TraceRow {
        self.rows.last().expect("trace always holds row 0")
    }
}

// radicals-only: begin

/// Real fifth root of `x ≥ 0`.
///
/// Splits `x = m·2^(5k)` with `m ∈ [1/2, 16)` from the bit pattern and runs
/// Newton's method on `y⁵ = m`.
pub fn fifth_root(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let (mut bits, mut bias) = (x.to_bits(), 0);
    if (bits >> 52) & 0x7ff == 0 {
        // subnormal: lift by 2^60, undone below through k
        bits = (x * (1u64 << 60) as f64).to_bits();
        bias = -60;
    }
    let exponent = ((bits >> 52) & 0x7ff) as i32 - 1022 + bias;
    let mantissa = f64::from_bits((bits & 0x000f_ffff_ffff_ffff) | (1022u64 << 52));
    let r = exponent.rem_euclid(5);
    let k = (exponent - r) / 5;
    let m = mantissa * (1u32 << r) as f64;

    let mut y = 1.2;
    for _ in 0..16 {
        let y4 = (y * y) * (y * y);
        let next = (4.0 * y + m / y4) / 5.0;
        if next == y {
            break;
        }
        y = next;
    }
    y * 2f64.powi(k)
}

/// `x^{2/5}` as the square of the real fifth root.
#[inline]
pub fn two_fifths_power(x: f64) -> f64 {
    let r = fifth_root(x);
    r * r
}

/// `G(x, y)` without validation.
///
/// With `w = 2x + (1/3)√(2x/(1+y))` and `c = ∛(1/27 + w)`, `c − 1/3` equals
/// `w/(c² + c/3 + 1/9)`, which avoids cancelling against `1/3` for small `x`.
#[inline]
pub(crate) fn g_kernel(x: f64, y: f64) -> f64 {
    let two_x = 2.0 * x;
    let w = two_x + (two_x / (1.0 + y)).sqrt() / 3.0;
    let c = (ONE_27 + w).cbrt();
    w / (c * c + c / 3.0 + 1.0 / 9.0)
}

/// `G(x, y) = ∛(2x + 1/27 + (1/3)√(2x/(1+y))) − 1/3`.
pub fn g(x: f64, y: f64) -> Result<f64> {
    let x = check_nonneg("G", x)?;
    let y = check_nonneg("G", y)?;
    Ok(g_kernel(x, y))
}

/// `∂G/∂y(x, y) = −(√(2x)/18)·((2x + 1/27)(1+y)^{9/4} + (√(2x)/3)(1+y)^{7/4})^{−2/3}`.
pub fn dg_dy(x: f64, y: f64) -> Result<f64> {
    let x = check_nonneg("dG_dy", x)?;
    if x == 0.0 {
        return Err(Error::domain("dG_dy", x, "requires x > 0"));
    }
    let y = check_nonneg("dG_dy", y)?;
    let s = (2.0 * x).sqrt();
    let one_y = 1.0 + y;
    let quarter = one_y.sqrt().sqrt();
    let inner = (2.0 * x + ONE_27) * one_y * one_y * quarter
        + (s / 3.0) * one_y * quarter * quarter * quarter;
    let c = inner.cbrt();
    Ok(-(s / 18.0) / (c * c))
}

pub(crate) fn m0_kernel(x: f64) -> f64 {
    g_kernel(x, two_fifths_power(x))
}

/// `M₀(x) = G(x, x^{2/5})`.
pub fn m0(x: f64) -> Result<f64> {
    let x = check_nonneg("m0", x)?;
    Ok(m0_kernel(x))
}

/// `[M₀(x), …, Mₙ(x)]`.
pub fn iterate_values(x: f64, n: usize) -> Result<Vec<f64>> {
    let x = check_nonneg("iterate", x)?;
    if n > MAX_ITERATIONS {
        return Err(Error::domain(
            "iterate",
            n as f64,
            "at most 64 iterations (the bound is below machine epsilon long before)",
        ));
    }
    let mut values = Vec::with_capacity(n + 1);
    let mut current = m0_kernel(x);
    values.push(current);
    for _ in 0..n {
        current = g_kernel(x, current);
        values.push(current);
    }
    Ok(values)
}

/// Iterates until the certified bound `C0/Kⁿ` drops to `tol`. Never consults
/// the closed form.
pub fn my_fixed(x: f64, tol: f64) -> Result<EvalResult> {
    let x = check_nonneg("my_fixed", x)?;
    if tol.is_nan() || tol < MIN_TOL || !tol.is_finite() {
        return Err(Error::domain(
            "my_fixed",
            tol,
            "tolerance must be at least 1e-15",
        ));
    }
    if x == 0.0 {
        return Ok(EvalResult {
            x,
            value: 0.0,
            method: Method::FixedPoint,
            iterations: 0,
            error_bound: 0.0,
        });
    }
    let iterations = iterations_for(tol);
    let mut value = m0_kernel(x);
    for _ in 0..iterations {
        value = g_kernel(x, value);
    }
    Ok(EvalResult {
        x,
        value,
        method: Method::FixedPoint,
        iterations,
        error_bound: certified_bound(iterations),
    })
}

// radicals-only: end

/// `C0/Kⁿ` with the certificate constants.
pub fn certified_bound(n: usize) -> f64 {
    C0 / K_CERT.powi(n as i32)
}

/// Smallest `n` with `C0/Kⁿ ≤ tol`.
pub fn iterations_for(tol: f64) -> usize {
    (0..=MAX_ITERATIONS)
        .find(|&n| certified_bound(n) <= tol)
        .unwrap_or(MAX_ITERATIONS)
}

/// `Mₙ` for `n = 0..=n` with error columns measured against the closed form.
pub fn iterate(x: f64, n: usize) -> Result<IterationTrace> {
    let values = iterate_values(x, n)?;
    let reference = closed_form::my_closed(x)?.value;
    Ok(IterationTrace::against(x, &values, reference))
}

/// `g(v) = (1/18)·(1/v + v³/27 + v/3)^{−2/3}`; `|∂G/∂y(x, 0)| = g((2x)^{−1/4})`.
pub fn g_profile(v: f64) -> f64 {
    (1.0 / v + v * v * v / 27.0 + v / 3.0).powf(-2.0 / 3.0) / 18.0
}

/// `|∂G/∂y(x, MY(x))|` written in `z = MY(x)`: `z/(18(1+z)(z+1/3)²)`.
pub fn slope_at_fixed_point(z: f64) -> f64 {
    let a = z + 1.0 / 3.0;
    z / (18.0 * (1.0 + z) * a * a)
}

/// `A(z) = (1/18)(1 + (1/3)(z − 1/3)/(z + 1/3)²)`, the first factor of the
/// seed-error bound `U(z) = A(z)·B(z)`.
pub fn a_factor(z: f64) -> f64 {
    let a = z + 1.0 / 3.0;
    (1.0 + (z - 1.0 / 3.0) / (3.0 * a * a)) / 18.0
}

/// `B(z) = (w^{2/5} − 1)/(4w²)` with `w = (√z + 1/√z)/2 ≥ 1`.
pub fn b_factor(z: f64) -> f64 {
    let w = 0.5 * (z.sqrt() + 1.0 / z.sqrt());
    (w.powf(0.4) - 1.0) / (4.0 * w * w)
}

/// `(1/4)·ξ·(1 + ξ)^{−9/2}`, whose maximum `1/43.37886` at `ξ = 2/7` is the
/// printed bound on `B`.
pub fn b_factor_bound(xi: f64) -> f64 {
    0.25 * xi * (1.0 + xi).powf(-4.5)
}

/// `U(z) = z((f(z))^{2/5} − z)/(18(1+z)(z+1/3)²)`, the bound on `|M₀ − MY|` at `MY(x) = z`.
pub fn seed_error_bound(z: f64) -> f64 {
    let x = crate::canonical::f(z);
    let a = z + 1.0 / 3.0;
    z * (x.powf(0.4) - z) / (18.0 * (1.0 + z) * a * a)
}

/// Re-derives every constant from its closed-form maximiser.
pub fn constants() -> ConvergenceConstants {
    let v0 = (1.5 * (5f64.sqrt() - 1.0)).sqrt();
    let c1 = g_profile(v0);
    let z_star = (33f64.sqrt() - 3.0) / 12.0;
    let c2 = slope_at_fixed_point(z_star);
    let b_max = b_factor_bound(2.0 / 7.0);
    let c0 = a_factor(1.0) * b_max;
    // Ã(z) = A(z)/z is maximal at z = 0 with value 1/2
    let c0_rel = 0.5 * b_max;
    ConvergenceConstants {
        c0,
        c0_rel,
        c1,
        c2,
        k: 2.0 / (c1 + c2),
        v0,
        z_star,
    }
}
