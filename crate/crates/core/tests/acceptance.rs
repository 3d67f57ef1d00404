//! Acceptance criteria 1 to 13. Each test prints one PASS/FAIL line and then
//! asserts, so `cargo test --test acceptance -- --nocapture` gives a summary.

use std::path::PathBuf;
use std::process::Command;

use my_cubic::closed_form::{bounds, companion_roots, my_antiderivative, my_closed, my_derivative, my_radical_alt};
use my_cubic::fixed_point::{constants, iterate, iterate_values, m0};
use my_cubic::hypergeom::my_hyper;
use my_cubic::oracle::{depressed_roots_bisect, integrate, my_bisect};
use my_cubic::solver::{
    case3_expressions, solve_depressed, solve_depressed_iterative, viete_trig_roots, DepressedCubic, RootKind,
    RootLabel,
};
use my_cubic::TWO_27;
use rand::{Rng, SeedableRng};

fn report(n: u32, title: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("criterion {n:2}: PASS  {title}");
    } else {
        println!("criterion {n:2}: FAIL  {title}");
        for f in failures.iter().take(10) {
            println!("              {f}");
        }
    }
    assert!(failures.is_empty(), "criterion {n} failed: {failures:?}");
}

fn my(x: f64) -> f64 {
    my_closed(x).unwrap().value
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| match i {
            0 => lo,
            _ if i == n - 1 => hi,
            _ => (a + (b - a) * i as f64 / (n - 1) as f64).exp(),
        })
        .collect()
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

/// `v` rounded to 2 significant digits, as text.
fn sig2(v: f64) -> String {
    format!("{v:.1e}")
}

#[test]
fn criterion_01_closed_form_values() {
    let mut fails = Vec::new();
    for (x, want) in [(0.01, 0.1328694292), (1000.0, 12.2745406200)] {
        let got = my(x);
        check(&mut fails, (got - want).abs() <= 5e-11, || {
            format!("my_closed({x}) = {got:.15}, expected {want} +/- 5e-11 (off by {:.2e})", (got - want).abs())
        });
    }
    report(1, "my_closed(0.01) and my_closed(1000) within 5e-11", &fails);
}

const EX1: [(f64, f64, f64); 6] = [
    (0.1321129198, 7.57e-4, 5.69e-3),
    (0.1328921191, 2.27e-5, 1.71e-4),
    (0.1328687489, 6.80e-7, 5.12e-6),
    (0.1328694495, 2.04e-8, 1.53e-7),
    (0.1328694285, 6.11e-10, 4.60e-9),
    (0.1328694292, 1.83e-11, 1.38e-10),
];

const EX2: [(f64, f64, f64); 3] = [
    (12.2735762826, 9.64e-4, 7.86e-5),
    (12.2745409317, 3.12e-7, 2.54e-8),
    (12.2745406200, 6.85e-11, 5.58e-12),
];

#[test]
fn criterion_02_fixed_point_tables() {
    let mut fails = Vec::new();
    for (x, n, rows) in [(0.01, 5, &EX1[..]), (1000.0, 2, &EX2[..])] {
        let trace = iterate(x, n).unwrap();
        for (row, &(value, abs_err, _)) in trace.rows.iter().zip(rows) {
            check(&mut fails, (row.value - value).abs() <= 1e-9, || {
                format!("x = {x}, n = {}: value {:.12} vs {value}", row.n, row.value)
            });
            check(&mut fails, sig2(row.abs_err) == sig2(abs_err), || {
                format!(
                    "x = {x}, n = {}: |M_n - MY| = {:.3e} vs printed {abs_err:.2e}",
                    row.n, row.abs_err
                )
            });
        }
    }
    report(2, "iterate(0.01, 5) and iterate(1000, 2) reproduce both tables", &fails);
}

#[test]
fn criterion_03_cubic_example_1() {
    let mut fails = Vec::new();
    let c = DepressedCubic::new(1.0, 1.0).unwrap();
    let alpha = solve_depressed(c).unwrap().values()[0];
    check(&mut fails, (alpha + 0.6823278038).abs() <= 1e-9, || format!("alpha = {alpha}"));
    let table = [-0.6823458163, -0.6823274572, -0.6823278105, -0.6823278037];
    for (n, want) in table.into_iter().enumerate() {
        let got = solve_depressed_iterative(c, n).unwrap().values()[0];
        check(&mut fails, (got - want).abs() <= 1e-9, || format!("n = {n}: {got:.12} vs {want}"));
    }
    report(3, "y^3 + y + 1: root and iterative table", &fails);
}

#[test]
fn criterion_04_cubic_example_2() {
    let mut fails = Vec::new();
    let c = DepressedCubic::new(-3.0, 1.0).unwrap();
    let r = solve_depressed(c).unwrap();
    for (label, want) in [
        (RootLabel::Alpha, 1.5320888862),
        (RootLabel::Beta, 0.3472963553),
        (RootLabel::Gamma, -1.8793852416),
    ] {
        let got = r.get(label).unwrap();
        check(&mut fails, (got - want).abs() <= 1e-9, || format!("{label:?} = {got}"));
    }
    let alpha = [1.5296764368, 1.5321663348, 1.5320864010, 1.5320889660, 1.5320888837, 1.5320888863];
    let beta = [0.3476559549, 0.3472848043, 0.3472967260, 0.3472963434, 0.3472963557, 0.3472963553];
    let gamma = [-1.8773323917, -1.8794511391, -1.8793831270, -1.8793853094, -1.8793852394, -1.8793852416];
    for n in 0..=5 {
        let r = solve_depressed_iterative(c, n).unwrap();
        for (label, col) in [(RootLabel::Alpha, &alpha), (RootLabel::Beta, &beta), (RootLabel::Gamma, &gamma)] {
            let got = r.get(label).unwrap();
            check(&mut fails, (got - col[n]).abs() <= 1e-9, || {
                format!("n = {n}, {label:?}: {got:.12} vs {}", col[n])
            });
        }
    }
    report(4, "y^3 - 3y + 1: roots and three iterative tables", &fails);
}

#[test]
fn criterion_05_seed_bounds() {
    let mut fails = Vec::new();
    for x in log_grid(1e-6, 1e6, 1000) {
        let z = my_bisect(x, 1e-13).unwrap();
        let s = m0(x).unwrap();
        check(&mut fails, (s - z).abs() < 1.4408e-3, || format!("x = {x:e}: |M0 - MY| = {:e}", (s - z).abs()));
        check(&mut fails, (s / z - 1.0).abs() < 1.1527e-2, || {
            format!("x = {x:e}: |M0/MY - 1| = {:e}", (s / z - 1.0).abs())
        });
    }
    report(5, "|M0 - MY| < 1.4408e-3 and |M0/MY - 1| < 1.1527e-2 on [1e-6, 1e6]", &fails);
}

#[test]
fn criterion_06_contraction() {
    // "error" is read relative to max(1, MY): for MY ~ 100 an absolute 1e-13 is
    // only a handful of ulps and the next error is pure rounding
    let mut fails = Vec::new();
    let mut ratios = 0;
    for x in log_grid(1e-6, 1e6, 1000) {
        let z = my_bisect(x, 1e-15).unwrap();
        let floor = 1e-13 * z.max(1.0);
        let v = iterate_values(x, 8).unwrap();
        for (n, w) in v.windows(2).enumerate() {
            let (e0, e1) = ((w[0] - z).abs(), (w[1] - z).abs());
            if e0 > floor {
                ratios += 1;
                check(&mut fails, e1 <= e0 / 24.0, || {
                    format!("x = {x:e}, n = {n}: ratio {:.4}", e1 / e0)
                });
            }
        }
    }
    assert!(ratios > 2000);
    report(6, "per-iteration error ratio <= 1/24 above 1e-13·max(1, MY)", &fails);
}

#[test]
fn criterion_07_constants() {
    let c = constants();
    let mut fails = Vec::new();
    for (name, got, want) in [
        ("C1", c.c1, 1.0 / 21.2398),
        ("C2", c.c2, 1.0 / 30.5475),
        ("C0", c.c0, 1.0 / 694.061782),
        ("K", c.k, 25.0572),
    ] {
        check(&mut fails, (got / want - 1.0).abs() <= 1e-4, || format!("{name} = {got} vs {want}"));
    }
    report(7, "C1, C2, C0, K within 1e-4 relative", &fails);
}

#[test]
fn criterion_08_equalities() {
    let mut fails = Vec::new();
    let rel = |a: f64, b: f64| (a / b - 1.0).abs();
    check(&mut fails, (my(TWO_27) - 1.0 / 3.0).abs() <= 1e-16, || "MY(2/27) != 1/3".into());
    // both anchors to within two ulps
    check(&mut fails, (my(18.0) - 3.0).abs() <= 6.0 * f64::EPSILON, || "MY(18) != 3".into());
    let desk = (1.0 / 3.0) * (3.0 * my((TWO_27 / 54.0).sqrt() + 1.0 / 27.0) + 1.0);
    check(&mut fails, (desk - 2.0 / 3.0).abs() <= 1e-15 && ((12.0f64 / 27.0).sqrt() - 2.0 / 3.0).abs() <= 1e-15, || {
        format!("equality 2 at 2/27: {desk}")
    });
    for x in log_grid(TWO_27, 1e8, 5000) {
        let (a, b) = (my_radical_alt(x).unwrap(), my(x));
        check(&mut fails, rel(a, b) <= 1e-11, || format!("equality 1 at {x:e}: {a} vs {b}"));
    }
    for x in log_grid(1e-8, 1e8, 5000) {
        let z = my(x);
        let lhs = z * (3.0 * my((x / 54.0).sqrt() + 1.0 / 27.0) + 1.0);
        check(&mut fails, rel(lhs, (6.0 * x).sqrt()) <= 1e-11, || format!("equality 2 at {x:e}"));
        let inv = 1.0 / my(x / z.powi(5));
        check(&mut fails, rel(inv, z) <= 1e-11, || format!("equality 3 at {x:e}: {inv} vs {z}"));
    }
    for i in 0..=5000 {
        let x = TWO_27 * i as f64 / 5000.0;
        let direct = my(TWO_27 - x);
        let (z2, z3) = companion_roots(my(x).min(1.0 / 3.0)).unwrap();
        let rebuilt = -2.0 / 3.0 - z2;
        check(&mut fails, (rebuilt - direct).abs() <= 1e-11 * direct.max(1.0), || {
            format!("equality 4 at {x:e}: {rebuilt} vs {direct}")
        });
        let z3_direct = direct - my(x) - 1.0 / 3.0;
        check(&mut fails, (z3 - z3_direct).abs() <= 1e-11, || format!("equality 4 z3 at {x:e}"));
    }
    report(8, "equalities 1-4 within 1e-11 relative, desk anchors exact", &fails);
}

/// `a ≤ b`, strict unless `x` is 0 or 1.
fn ordered(fails: &mut Vec<String>, what: &str, x: f64, a: f64, b: f64) {
    let forced = x == 0.0 || x == 1.0;
    let ok = if forced { (a - b).abs() <= 4.0 * f64::EPSILON * b.abs() } else { a < b };
    check(fails, ok, || format!("{what} at x = {x:e}: {a} vs {b}"));
}

#[test]
fn criterion_09_inequalities() {
    let mut fails = Vec::new();
    // odd count keeps x = 1 on the grid
    let mut xs = log_grid(1e-8, 1e8, 20_001);
    xs[10_000] = 1.0;
    xs.push(0.0);
    for &x in &xs {
        let z = my(x);
        let (lo, hi) = bounds(x).unwrap();
        ordered(&mut fails, "inequality 1 lower", x, lo, z);
        ordered(&mut fails, "inequality 1 upper", x, z, hi);
        if x <= 1.0 {
            ordered(&mut fails, "inequality 3 lower", x, x.sqrt(), z);
            ordered(&mut fails, "inequality 3 upper", x, z, x.cbrt());
        }
        if x >= 1.0 {
            ordered(&mut fails, "inequality 4 lower", x, x.cbrt(), z);
            ordered(&mut fails, "inequality 4 upper", x, z, x.sqrt());
        }
        if x > 0.0 {
            for a in [0.25, 0.5, 0.75] {
                ordered(&mut fails, "inequality 2a", x, z.powf(a), my(x.powf(a)));
            }
            for a in [-1.0, 1.5, 2.0] {
                ordered(&mut fails, "inequality 2b", x, my(x.powf(a)), z.powf(a));
            }
        }
    }
    report(9, "inequalities 1-4 strict except at x in {0, 1}", &fails);
}

#[test]
fn criterion_10_calculus() {
    let mut fails = Vec::new();
    for x in log_grid(1e-8, 1e8, 2000) {
        let h = x * 1e-6;
        let fd = (my(x + h) - my(x - h)) / (2.0 * h);
        let d = my_derivative(x).unwrap();
        check(&mut fails, (d / fd - 1.0).abs() <= 1e-6, || format!("derivative at {x:e}: {d} vs {fd}"));
    }
    let base = my_antiderivative(0.0).unwrap();
    for i in 1..=100 {
        let b = i as f64 / 10.0;
        let quad = integrate(my, 0.0, b, 1e-12);
        let prim = my_antiderivative(b).unwrap() - base;
        check(&mut fails, (quad - prim).abs() <= 1e-9, || format!("primitive on [0, {b}]: {prim} vs {quad}"));
    }
    report(10, "derivative vs central differences, primitive vs quadrature", &fails);
}

#[test]
fn criterion_11_hypergeometric() {
    let mut fails = Vec::new();
    for x in log_grid(1e-3, 1e4, 1000) {
        let (h, c) = (my_hyper(x).unwrap().value, my(x));
        check(&mut fails, (h - c).abs() <= 1e-9 * c, || format!("x = {x:e}: {h} vs {c}"));
    }
    let v = my_hyper(TWO_27).unwrap().value;
    check(&mut fails, (v - 1.0 / 3.0).abs() <= f64::EPSILON / 3.0, || format!("my_hyper(2/27) = {v:.17}"));
    report(11, "my_hyper matches my_closed on [1e-3, 1e4], exact at 2/27", &fails);
}

#[test]
fn criterion_12_solver_robustness() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
    let draw = |rng: &mut rand_chacha::ChaCha8Rng| {
        let m = 10f64.powf(rng.gen_range(-6.0..6.0));
        if rng.gen_bool(0.5) {
            m
        } else {
            -m
        }
    };
    let mut fails = Vec::new();
    let (mut three, mut duals) = (0, 0);
    for _ in 0..10_000 {
        let c = DepressedCubic::new(draw(&mut rng), draw(&mut rng)).unwrap();
        let r = solve_depressed(c).unwrap();
        let v = r.values();
        for &y in &v {
            check(&mut fails, c.residual(y) <= c.residual_bound(y), || {
                format!("{c:?}: residual {:e} at {y}", c.residual(y))
            });
        }
        if r.kind == RootKind::ThreeReal {
            three += 1;
            // 1e-9 is applied on the scale of the roots, √(−p/3)
            let scale = (-c.p / 3.0).sqrt().max(1.0);
            let (t0, t1, t2) = viete_trig_roots(c).unwrap();
            let oracle = depressed_roots_bisect(c.p, c.q, 1e-15).unwrap();
            for (i, (y, t)) in v.iter().zip([t2, t1, t0]).enumerate() {
                check(&mut fails, (y - t).abs() <= 1e-9 * scale, || format!("{c:?}: trig root {i}"));
                check(&mut fails, (y - oracle[i]).abs() <= 1e-9 * scale, || format!("{c:?}: oracle root {i}"));
            }
        } else if let Ok((a, b)) = case3_expressions(c) {
            duals += 1;
            check(&mut fails, (a - b).abs() <= 1e-10 * a.abs(), || format!("{c:?}: duals {a} vs {b}"));
        }
    }
    assert!(three > 1000 && duals > 500, "{three} three-root cases, {duals} case-3 cases");
    report(12, "10^4 random cubics: residuals, trig and bisection roots, case 3 duals", &fails);
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mycubic"))
}

#[test]
fn criterion_13_cli() {
    let mut fails = Vec::new();
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for name in ["my-ex1", "my-ex2", "cubic-ex1", "cubic-ex2"] {
        let out = bin().args(["table", name]).output().unwrap();
        let want = std::fs::read(golden.join(format!("{name}.txt"))).unwrap();
        check(&mut fails, out.status.success() && out.stdout == want, || {
            format!("table {name} differs from golden:\n{}", String::from_utf8_lossy(&out.stdout))
        });
    }
    let status = bin().arg("verify").output().unwrap().status;
    check(&mut fails, status.code() == Some(0), || format!("verify exited with {status}"));
    report(13, "table output byte-matches golden files, verify exits 0", &fails);
}
