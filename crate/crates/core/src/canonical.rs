//! The canonical function `f(z) = (z³ + z²)/2` and the reductions of a
//! depressed cubic `y³ + py + q = 0` to the canonical equation `f(z) = t`.
//!
//! `f` increases on `(−∞, −2/3]`, decreases on `[−2/3, 0]` and increases again
//! on `[0, ∞)`, with a local maximum `2/27` at `z = −2/3` and a local minimum
//! `0` at `z = 0`. The inflection point `(−1/3, 1/27)` is a centre of symmetry:
//! `f(−2/3 − z) = 2/27 − f(z)`.

use serde::{Deserialize, Serialize};

use crate::error::{finite, Error, Result};
use crate::solver::DepressedCubic;
use crate::{ONE_27, TWO_27};

/// Root-count classification of a canonical target `x` in `f(z) = x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scenario {
    /// `x > 2/27`: one real root, above 1/3.
    UniqueAboveMax,
    /// `x < 0`: one real root, below −1.
    UniqueNegative,
    /// `0 ≤ x ≤ 2/27`: three real roots, two coinciding at the endpoints.
    ThreeReal,
}

impl Scenario {
    pub fn root_count(self) -> usize {
        match self {
            Scenario::ThreeReal => 3,
            _ => 1,
        }
    }
}

/// Maps a canonical root `z` back to a root `y` of the depressed cubic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Backmap {
    /// `y = numerator / (denominator · z)`.
    Reciprocal { numerator: f64, denominator: f64 },
    /// `y = scale · (z + offset)`.
    Affine { scale: f64, offset: f64 },
}

impl Backmap {
    /// Applies the map. `None` for `z = 0` under the reciprocal map.
    pub fn apply(&self, z: f64) -> Option<f64> {
        match *self {
            Backmap::Reciprocal {
                numerator,
                denominator,
            } => {
                if z == 0.0 {
                    None
                } else {
                    Some(numerator / (denominator * z))
                }
            }
            Backmap::Affine { scale, offset } => Some(scale * (z + offset)),
        }
    }
}

/// A depressed cubic rewritten as `f(z) = t`, together with the way back.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalReduction {
    pub t: f64,
    pub backmap: Backmap,
}

/// The normalised parameter `ξ = (3q/2p)·√(−3/p)` of a depressed cubic with `p < 0`.
///
/// `|ξ| ≤ 1` exactly when all three roots are real.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Xi(pub f64);

impl Xi {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// `f(z) = (z³ + z²)/2`, evaluated as `z²·(z + 1)/2`.
///
/// The factored form keeps the relative error small near the root `z = −1`.
#[inline]
pub fn f(z: f64) -> f64 {
    z * z * (z + 1.0) * 0.5
}

/// `f′(z) = (3z² + 2z)/2`.
#[inline]
pub fn f_prime(z: f64) -> f64 {
    z * (1.5 * z + 1.0)
}

/// Classifies a target value. The boundaries `0` and `2/27` are `ThreeReal`.
pub fn classify_target(x: f64) -> Scenario {
    if x > TWO_27 {
        Scenario::UniqueAboveMax
    } else if x < 0.0 {
        Scenario::UniqueNegative
    } else {
        Scenario::ThreeReal
    }
}

/// Reflection through the symmetry centre: `z ↦ −2/3 − z`.
#[inline]
pub fn reflect(z: f64) -> f64 {
    -2.0 / 3.0 - z
}

/// Transformation 1: `z = q/(py)`, giving `t = −q²/(2p³)` and `y = q/(pz)`.
pub fn transform1(c: DepressedCubic) -> Result<CanonicalReduction> {
    let (p, q) = (c.p, c.q);
    if p == 0.0 {
        return Err(Error::domain("transform1", p, "p must be nonzero"));
    }
    if q == 0.0 {
        return Err(Error::domain("transform1", q, "q must be nonzero"));
    }
    // q²/p³ as (q/p)²/p to delay overflow
    let t = -0.5 * (q / p) * (q / p) / p;
    Ok(CanonicalReduction {
        t,
        backmap: Backmap::Reciprocal {
            numerator: q,
            denominator: p,
        },
    })
}

/// Transformation 2 (requires `p < 0`): `z = y/√(−3p) − 1/3`, giving
/// `t = 1/27 − q/(2√(−27p³))` and `y = √(−3p)·(z + 1/3)`.
pub fn transform2(c: DepressedCubic) -> Result<CanonicalReduction> {
    let (p, q) = (c.p, c.q);
    if p.is_nan() || p >= 0.0 {
        return Err(Error::domain("transform2", p, "p must be negative"));
    }
    let minus_p = -p;
    // √(−27p³) = √27 · (−p) · √(−p)
    let root = 27f64.sqrt() * minus_p * minus_p.sqrt();
    let t = ONE_27 - q / (2.0 * root);
    Ok(CanonicalReduction {
        t,
        backmap: Backmap::Affine {
            scale: (3.0 * minus_p).sqrt(),
            offset: 1.0 / 3.0,
        },
    })
}

/// `ξ = (3q/2p)·√(−3/p)`, i.e. `−sign(q)·√(−27q²/(4p³))`.
///
/// Extreme magnitudes (`|p| < 1e−100` or `|q| > 1e100`) are combined in log
/// space so the intermediate `(−p)^{3/2}` cannot underflow or overflow.
pub fn xi(c: DepressedCubic) -> Result<Xi> {
    let (p, q) = (c.p, c.q);
    if p.is_nan() || p >= 0.0 {
        return Err(Error::domain("xi", p, "p must be negative"));
    }
    if q == 0.0 {
        return Ok(Xi(0.0));
    }
    let value = if p.abs() < 1e-100 || q.abs() > 1e100 {
        // |ξ| = |q|·√27 / (2·(−p)^{3/2})
        let log_mag = q.abs().ln() + 0.5 * 27f64.ln() - 2f64.ln() - 1.5 * (-p).ln();
        -q.signum() * log_mag.exp()
    } else {
        (3.0 * q / (2.0 * p)) * (-3.0 / p).sqrt()
    };
    Ok(Xi(value))
}

/// Checks a canonical target is usable (finite).
pub(crate) fn check_target(op: &'static str, x: f64) -> Result<f64> {
    finite(op, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cubic(p: f64, q: f64) -> DepressedCubic {
        DepressedCubic::new(p, q).unwrap()
    }

    #[test]
    fn canonical_values() {
        assert_eq!(f(0.0), 0.0);
        assert!((f(1.0 / 3.0) - TWO_27).abs() < 1e-17);
        assert!((f(-2.0 / 3.0) - TWO_27).abs() < 1e-16);
        assert_eq!(f(-1.0), 0.0);
        assert_eq!(f(3.0), 18.0);
    }

    #[test]
    fn scenarios() {
        assert_eq!(classify_target(0.12), Scenario::UniqueAboveMax);
        assert_eq!(classify_target(-0.08), Scenario::UniqueNegative);
        assert_eq!(classify_target(0.05), Scenario::ThreeReal);
        assert_eq!(classify_target(0.0), Scenario::ThreeReal);
        assert_eq!(classify_target(TWO_27), Scenario::ThreeReal);
        assert_eq!(classify_target(-0.0), Scenario::ThreeReal);
    }

    #[test]
    fn reflection() {
        assert_eq!(reflect(-1.0 / 3.0), -1.0 / 3.0);
        assert_eq!(reflect(0.0), -2.0 / 3.0);
        assert!((reflect(1.0 / 3.0) + 1.0).abs() < 1e-16);
    }

    #[test]
    fn transformation_one() {
        assert_eq!(transform1(cubic(1.0, 1.0)).unwrap().t, -0.5);
        let r = transform1(cubic(-3.0, 1.0)).unwrap();
        assert!((r.t - 1.0 / 54.0).abs() < 1e-17);
        assert!(transform1(cubic(1.0, 0.0)).is_err());
        assert!(transform1(cubic(0.0, 1.0)).is_err());
    }

    #[test]
    fn transformation_two() {
        let r = transform2(cubic(-3.0, 1.0)).unwrap();
        assert!((r.t - 1.0 / 54.0).abs() < 1e-17);
        assert!((r.t - (1.0 + xi(cubic(-3.0, 1.0)).unwrap().0) / 27.0).abs() < 1e-17);
        assert_eq!(transform2(cubic(-3.0, 0.0)).unwrap().t, ONE_27);
        assert!(transform2(cubic(1.0, 1.0)).is_err());
        assert!(transform2(cubic(0.0, 1.0)).is_err());
    }

    #[test]
    fn xi_values() {
        assert!((xi(cubic(-3.0, 1.0)).unwrap().0 + 0.5).abs() < 1e-16);
        assert_eq!(xi(cubic(-3.0, 0.0)).unwrap().0, 0.0);
        assert!((xi(cubic(-3.0, -1.0)).unwrap().0 - 0.5).abs() < 1e-16);
        assert!(xi(cubic(3.0, 1.0)).is_err());
    }

    #[test]
    fn xi_extreme_magnitudes() {
        // p = −3e−200: (−p)^{3/2} underflows in the direct product
        let c = cubic(-3e-200, 1e-300);
        let x = xi(c).unwrap().0;
        // ξ = −q/(2 s³), s = 1e−100
        assert!((x / -5e-1 - 1.0).abs() < 1e-12, "{x}");
        let big = xi(cubic(-3.0, 2e200)).unwrap().0;
        assert!((big / -1e200 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn backmap_descriptors() {
        let r = Backmap::Reciprocal {
            numerator: 1.0,
            denominator: 2.0,
        };
        assert_eq!(r.apply(0.0), None);
        assert_eq!(r.apply(0.25), Some(2.0));
        let a = Backmap::Affine {
            scale: 3.0,
            offset: 1.0 / 3.0,
        };
        assert!((a.apply(0.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn monotonic_pieces() {
        let grid = |a: f64, b: f64| (0..=2000).map(move |i| a + (b - a) * i as f64 / 2000.0);
        let inc = |v: Vec<f64>| v.windows(2).all(|w| w[1] > w[0]);
        let dec = |v: Vec<f64>| v.windows(2).all(|w| w[1] < w[0]);
        assert!(inc(grid(0.0, 50.0).map(f).collect()));
        assert!(inc(grid(-50.0, -2.0 / 3.0).map(f).collect()));
        assert!(dec(grid(-2.0 / 3.0 + 1e-6, -1e-6).map(f).collect()));
    }

    #[test]
    fn symmetry_identity_dense() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1_000_000 {
            let z: f64 = rng.gen_range(-10.0..10.0);
            let lhs = f(reflect(z));
            let rhs = TWO_27 - f(z);
            assert!(
                (lhs - rhs).abs() <= 1e-15 * (1.0 + f(z).abs()),
                "z = {z}: {lhs} vs {rhs}"
            );
        }
    }

    proptest! {
        #[test]
        fn t_consistency(p in -1e6f64..-1e-6, q in -1e6f64..1e6) {
            let c = cubic(p, q);
            let t = transform2(c).unwrap().t;
            let via_xi = (1.0 + xi(c).unwrap().0) / 27.0;
            prop_assert!((t - via_xi).abs() <= 1e-15 * (1.0 + t.abs()), "{} vs {}", t, via_xi);
        }

        #[test]
        fn xi_squared(p in -1e3f64..-1e-3, q in -1e3f64..1e3) {
            let x = xi(cubic(p, q)).unwrap().0;
            let sq = -27.0 * q * q / (4.0 * p * p * p);
            prop_assert!((x * x - sq).abs() <= 1e-12 * (1.0 + sq));
            if q != 0.0 {
                prop_assert_eq!(x.signum(), -q.signum());
            }
        }
    }
}
