//! The invariant suite behind `mycubic verify`.
//!
//! Every check runs on a log grid of `grid_points` values over
//! `[x_min, x_max]` (intersected with the check's own domain) or on
//! `grid_points` random cubics drawn from a seeded ChaCha8 stream, so reports
//! are reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::canonical::{f, reflect};
use crate::closed_form::{bounds, companion_roots, my, my_derivative, my_radical_alt};
use crate::error::{Error, Result};
use crate::fixed_point::{certified_bound, iterate_values, m0_kernel, C0, C0_REL};
use crate::hypergeom::{my_hyper, WINDOW};
use crate::oracle::{depressed_roots_bisect, my_bisect};
use crate::solver::{case3_expressions, solve_depressed, viete_trig_roots, DepressedCubic, RootKind};
use crate::TWO_27;

pub const MIN_GRID_POINTS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub grid_points: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            grid_points: 1000,
            x_min: 1e-6,
            x_max: 1e6,
            seed: 42,
        }
    }
}

impl VerifyConfig {
    fn validate(&self) -> Result<()> {
        if self.grid_points < MIN_GRID_POINTS {
            return Err(Error::domain(
                "verify",
                self.grid_points as f64,
                "grid_points must be at least 10",
            ));
        }
        if !(self.x_min > 0.0 && self.x_min.is_finite()) {
            return Err(Error::domain("verify", self.x_min, "x_min must be positive"));
        }
        if !(self.x_max > self.x_min && self.x_max.is_finite()) {
            return Err(Error::domain("verify", self.x_max, "x_max must exceed x_min"));
        }
        Ok(())
    }
}

/// The first violating input of a check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub input: String,
    pub expected: f64,
    pub got: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<Failure>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: VerifyConfig,
    pub checks: Vec<CheckOutcome>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }
}

struct Check {
    outcome: CheckOutcome,
}

impl Check {
    fn new(name: &str) -> Self {
        Check {
            outcome: CheckOutcome {
                name: name.to_string(),
                cases: 0,
                failures: 0,
                first_failure: None,
            },
        }
    }

    fn record(&mut self, ok: bool, input: impl FnOnce() -> String, expected: f64, got: f64) {
        self.outcome.cases += 1;
        if !ok {
            self.outcome.failures += 1;
            if self.outcome.first_failure.is_none() {
                self.outcome.first_failure = Some(Failure {
                    input: input(),
                    expected,
                    got,
                });
            }
        }
    }

    /// `|got − expected| ≤ tol`.
    fn close(&mut self, input: impl FnOnce() -> String, expected: f64, got: f64, tol: f64) {
        self.record((got - expected).abs() <= tol, input, expected, got);
    }

    fn done(self) -> CheckOutcome {
        self.outcome
    }
}

/// `n` log-spaced points over `[lo, hi]`, both endpoints included.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == n - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

fn x_label(x: f64) -> impl FnOnce() -> String {
    move || format!("x = {x:e}")
}

fn inverse_identity(xs: &[f64]) -> CheckOutcome {
    let mut c = Check::new("closed form inverts f");
    for &x in xs {
        c.close(x_label(x), x, f(my(x)), 1e-13 * (1.0 + x));
    }
    c.done()
}

fn oracle_agreement(xs: &[f64]) -> CheckOutcome {
    let mut c = Check::new("closed form matches bisection");
    for &x in xs {
        let z = my(x);
        let o = my_bisect(x, 1e-15).expect("valid input");
        c.close(x_label(x), o, z, 1e-12 * z.max(1.0));
    }
    c.done()
}

fn seed_bounds(xs: &[f64]) -> CheckOutcome {
    let mut c = Check::new("seed M0 within C0 and C0'");
    for &x in xs {
        let z = my(x);
        let m = m0_kernel(x);
        c.record((m - z).abs() < C0, x_label(x), z, m);
        c.record((m / z - 1.0).abs() < C0_REL, x_label(x), z, m);
    }
    c.done()
}

fn contraction(xs: &[f64]) -> CheckOutcome {
    let mut c = Check::new("iteration error ratio at most 1/24");
    for &x in xs {
        let z = my(x);
        // below ~1e-13·z the next error is rounding noise of a few ulps
        let floor = 1e-13 * z.max(1.0);
        let v = iterate_values(x, 6).expect("valid input");
        for w in v.windows(2) {
            let (e0, e1) = ((w[0] - z).abs(), (w[1] - z).abs());
            if e0 > floor {
                c.record(e1 <= e0 / 24.0, x_label(x), e0 / 24.0, e1);
            }
        }
    }
    c.done()
}

fn certified(xs: &[f64]) -> CheckOutcome {
    let mut c = Check::new("certified bound C0/K^n");
    for &x in xs {
        let z = my(x);
        let v = iterate_values(x, 8).expect("valid input");
        for (n, m) in v.iter().enumerate() {
            let bound = certified_bound(n) + 4.0 * f64::EPSILON * z;
            c.record((m - z).abs() <= bound, || format!("x = {x:e}, n = {n}"), bound, (m - z).abs());
        }
    }
    c.done()
}

fn hyper_agreement(cfg: &VerifyConfig) -> CheckOutcome {
    let mut c = Check::new("hypergeometric series matches closed form");
    let (lo, hi) = (cfg.x_min.max(WINDOW.0), cfg.x_max.min(WINDOW.1));
    if lo < hi {
        for x in log_grid(lo, hi, cfg.grid_points) {
            let z = my(x);
            match my_hyper(x) {
                Ok(h) => c.close(x_label(x), z, h.value, 1e-9 * z),
                Err(_) => c.record(false, x_label(x), z, f64::NAN),
            }
        }
    }
    c.done()
}

fn equality1(xs: &[f64]) -> CheckOutcome {
    let mut c = Check::new("equality 1: single-fraction radical form");
    for &x in xs.iter().filter(|&&x| x >= TWO_27) {
        let z = my(x);
        c.close(x_label(x), z, my_radical_alt(x).expect("x >= 2/27"), 1e-12 * z);
    }
    c.done()
}

fn equality2(xs: &[f64]) -> CheckOutcome {
    let mut c = Check::new("equality 2: MY(x)(3MY(sqrt(x/54)+1/27)+1) = sqrt(6x)");
    for &x in xs {
        let lhs = my(x) * (3.0 * my((x / 54.0).sqrt() + 1.0 / 27.0) + 1.0);
        let rhs = (6.0 * x).sqrt();
        c.close(x_label(x), rhs, lhs, 1e-12 * rhs);
    }
    c.done()
}

fn equality3(xs: &[f64]) -> CheckOutcome {
    let mut c = Check::new("equality 3: MY(x) = 1/MY(x/MY(x)^5)");
    for &x in xs {
        let z = my(x);
        let rhs = 1.0 / my(x / z.powi(5));
        c.close(x_label(x), z, rhs, 1e-11 * z);
    }
    c.done()
}

fn equality4(n: usize) -> CheckOutcome {
    let mut c = Check::new("equality 4: MY(2/27 - x) from MY(x)");
    for i in 0..n {
        let x = TWO_27 * i as f64 / (n - 1) as f64;
        let direct = my(TWO_27 - x);
        let (z2, _) = companion_roots(my(x).min(1.0 / 3.0)).expect("MY(x) <= 1/3");
        c.close(x_label(x), direct, reflect(z2), 1e-11);
    }
    c.done()
}

/// `a ≤ b`, strictly unless `x` is 0 or 1 (within `near` in log scale).
fn ordered(c: &mut Check, x: f64, a: f64, b: f64) {
    let forced = x == 0.0 || x.ln().abs() < 1e-2;
    let slack = 4.0 * f64::EPSILON * a.abs().max(b.abs());
    let ok = if forced { a <= b + slack } else { a < b };
    c.record(ok, x_label(x), b, a);
}

fn inequality1(xs: &[f64]) -> CheckOutcome {
    let mut c = Check::new("inequality 1: sqrt(2x/(1+x^(2/5))) <= MY(x) <= x^(2/5)");
    for &x in xs {
        let (lo, hi) = bounds(x).expect("x >= 0");
        let z = my(x);
        ordered(&mut c, x, lo, z);
        ordered(&mut c, x, z, hi);
    }
    c.done()
}

fn inequality2(xs: &[f64]) -> CheckOutcome {
    let mut c = Check::new("inequality 2: MY(x^a) against MY(x)^a");
    for &x in xs {
        let z = my(x);
        for a in [0.25, 0.5, 0.75] {
            ordered(&mut c, x, z.powf(a), my(x.powf(a)));
        }
        for a in [-1.0, 1.5, 2.0] {
            let xa = x.powf(a);
            if xa.is_finite() && xa > 0.0 {
                ordered(&mut c, x, my(xa), z.powf(a));
            }
        }
    }
    c.done()
}

fn inequalities34(xs: &[f64]) -> CheckOutcome {
    let mut c = Check::new("inequalities 3-4: MY(x) between sqrt(x) and cbrt(x)");
    for &x in xs {
        let z = my(x);
        let (s, r) = (x.sqrt(), x.cbrt());
        if x <= 1.0 {
            ordered(&mut c, x, s, z);
            ordered(&mut c, x, z, r);
        } else {
            ordered(&mut c, x, r, z);
            ordered(&mut c, x, z, s);
        }
    }
    c.done()
}

fn derivative(xs: &[f64]) -> CheckOutcome {
    let mut c = Check::new("derivative matches central differences");
    for &x in xs {
        let h = x * 1e-6;
        let fd = (my(x + h) - my(x - h)) / (2.0 * h);
        let d = my_derivative(x).expect("x > 0");
        c.close(x_label(x), fd, d, 1e-6 * fd.abs());
    }
    c.done()
}

fn random_cubic(rng: &mut ChaCha8Rng) -> DepressedCubic {
    let mut draw = || {
        let m = 10f64.powf(rng.gen_range(-6.0..6.0));
        if rng.gen_bool(0.5) {
            m
        } else {
            -m
        }
    };
    let (p, q) = (draw(), draw());
    DepressedCubic::new(p, q).expect("finite")
}

fn solver_checks(cfg: &VerifyConfig) -> Vec<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut residual = Check::new("solver residual |r^3+pr+q| <= 1e-10(1+|p||r|+|q|)");
    let mut viete = Check::new("three real roots match trigonometric roots");
    let mut oracle = Check::new("three real roots match bisection");
    let mut duals = Check::new("case 3 expressions agree");
    let mut vieta = Check::new("Vieta relations for three real roots");
    for _ in 0..cfg.grid_points {
        let c = random_cubic(&mut rng);
        let label = move || format!("p = {:e}, q = {:e}", c.p, c.q);
        let roots = match solve_depressed(c) {
            Ok(r) => r,
            Err(_) => {
                residual.record(false, label, 0.0, f64::NAN);
                continue;
            }
        };
        let v = roots.values();
        for &y in &v {
            residual.record(c.residual(y) <= c.residual_bound(y), label, c.residual_bound(y), c.residual(y));
        }
        if roots.kind == RootKind::ThreeReal {
            let s = (-c.p / 3.0).sqrt();
            let scale = s.max(1.0);
            let (t0, t1, t2) = viete_trig_roots(c).expect("three real roots");
            for (y, t) in v.iter().zip([t2, t1, t0]) {
                viete.close(label, t, *y, 1e-10 * scale);
            }
            let o = depressed_roots_bisect(c.p, c.q, 1e-15).expect("finite");
            for (y, t) in v.iter().zip(o) {
                oracle.close(label, t, *y, 1e-9 * scale);
            }
            let (a, b, g) = (v[2], v[1], v[0]);
            vieta.close(label, 0.0, a + b + g, 1e-9 * s);
            vieta.close(label, c.p, a * b + b * g + g * a, 1e-9 * s * s);
            vieta.close(label, -c.q, a * b * g, 1e-9 * s * s * s);
        } else if let Ok((first, second)) = case3_expressions(c) {
            duals.close(label, first, second, 1e-10 * first.abs());
        }
    }
    vec![residual.done(), viete.done(), oracle.done(), duals.done(), vieta.done()]
}

fn symmetry(xs: &[f64]) -> CheckOutcome {
    let mut c = Check::new("f(-2/3 - z) = 2/27 - f(z)");
    for &x in xs {
        for z in [x, -x] {
            let lhs = f(reflect(z));
            let rhs = TWO_27 - f(z);
            c.close(|| format!("z = {z:e}"), rhs, lhs, 1e-15 * (1.0 + f(z).abs()));
        }
    }
    c.done()
}

/// Runs every check. Errors only on an invalid configuration.
pub fn run(cfg: &VerifyConfig) -> Result<Report> {
    cfg.validate()?;
    let xs = log_grid(cfg.x_min, cfg.x_max, cfg.grid_points);
    let unit: Vec<f64> = log_grid(cfg.x_min.max(1e-6), cfg.x_max.min(1e3), cfg.grid_points);
    let mut checks = vec![
        inverse_identity(&xs),
        oracle_agreement(&xs),
        seed_bounds(&xs),
        contraction(&xs),
        certified(&xs),
        hyper_agreement(cfg),
        equality1(&xs),
        equality2(&xs),
        equality3(&xs),
        equality4(cfg.grid_points),
        inequality1(&xs),
        inequality2(&xs),
        inequalities34(&xs),
        derivative(&xs),
        symmetry(&unit),
    ];
    checks.extend(solver_checks(cfg));
    Ok(Report {
        config: *cfg,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let cfg = VerifyConfig {
            grid_points: 200,
            ..VerifyConfig::default()
        };
        let report = run(&cfg).unwrap();
        for c in &report.checks {
            assert!(c.passed(), "{} failed: {:?}", c.name, c.first_failure);
            assert!(c.cases > 0 || c.name.contains("case 3"), "{} ran no cases", c.name);
        }
    }

    #[test]
    fn deterministic() {
        let cfg = VerifyConfig {
            grid_points: 50,
            seed: 9,
            ..VerifyConfig::default()
        };
        assert_eq!(run(&cfg).unwrap(), run(&cfg).unwrap());
    }

    #[test]
    fn rejects_small_grids_and_bad_ranges() {
        let base = VerifyConfig::default();
        assert!(run(&VerifyConfig { grid_points: 5, ..base }).is_err());
        assert!(run(&VerifyConfig { x_min: 0.0, ..base }).is_err());
        assert!(run(&VerifyConfig { x_min: 2.0, x_max: 1.0, ..base }).is_err());
    }

    #[test]
    fn failures_carry_the_offending_input() {
        let mut c = Check::new("demo");
        c.close(|| "x = 1".into(), 1.0, 1.5, 0.1);
        c.close(|| "x = 2".into(), 2.0, 2.0, 0.1);
        let o = c.done();
        assert_eq!((o.cases, o.failures), (2, 1));
        assert_eq!(o.first_failure.unwrap().input, "x = 1");
    }

    #[test]
    fn grid_endpoints_exact() {
        let g = log_grid(1e-6, 1e6, 11);
        assert_eq!((g[0], g[10]), (1e-6, 1e6));
        assert!((g[5] - 1.0).abs() < 1e-12);
    }
}
