//! Numerics for the MY function, the inverse of `f(z) = (z³ + z²)/2` on the
//! nonnegative reals, and for solving real cubic equations through it.
//!
//! MY is evaluated three independent ways:
//!
//! | Path | Module | Notes |
//! |------|--------|-------|
//! | closed form (Cardano / trigonometric) | [`closed_form`] | production path |
//! | fixed-point iteration of real radicals | [`fixed_point`] | certified bound `C0/Kⁿ` |
//! | Gauss hypergeometric series | [`hypergeom`] | cross-check on `[1e-3, 1e4]` |
//!
//! and checked against the bisection [`oracle`]. The [`solver`] module reduces
//! depressed and general cubics to the canonical equation `f(z) = t`
//! ([`canonical`]) and reads the real roots off MY.
//!
//! ```
//! use my_cubic::{closed_form, solver::{self, DepressedCubic}};
//!
//! let my = closed_form::my_closed(18.0).unwrap();
//! assert!((my.value - 3.0).abs() < 1e-14);
//!
//! let roots = solver::solve_depressed(DepressedCubic::new(-3.0, 0.0).unwrap()).unwrap();
//! assert_eq!(roots.values().len(), 3);
//! ```

pub mod canonical;
pub mod cli;
pub mod closed_form;
mod error;
pub mod fixed_point;
pub mod format;
pub mod hypergeom;
pub mod oracle;
pub mod solver;
pub mod tables;
pub mod verify;

pub use closed_form::{CanonicalRoots, EvalResult, Method};
pub use error::{Error, Result};
pub use solver::{DepressedCubic, GeneralCubic, RootSet};

/// 2/27, the local maximum of the canonical function (attained at z = −2/3).
pub const TWO_27: f64 = 2.0 / 27.0;

/// 1/27, the value of the canonical function at its inflection point z = −1/3.
pub const ONE_27: f64 = 1.0 / 27.0;

/// Version string reported in JSON output.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
