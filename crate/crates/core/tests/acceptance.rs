//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any fails.

use std::f64::consts::{PI, TAU};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use rand::{rngs::StdRng, Rng, SeedableRng};

use homogeneous_euler::classify::{self, Classification, Mode, ProfileOptions, Sign};
use homogeneous_euler::dynamics::{self, Params, PhaseState};
use homogeneous_euler::field::{self, GridSpec};
use homogeneous_euler::period::{self, Level, Method, Spacing};
use homogeneous_euler::profile::{uniform_grid, SolutionProfile};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn params(lambda: f64, b: f64) -> Params {
    Params::new(lambda, b).expect("valid parameters")
}

/// `n` evenly spaced values from `a` to `b` inclusive.
fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
}

fn p_max(lambda: f64) -> f64 {
    ((lambda - 1.0) / lambda.powi(3)).powf(lambda - 1.0) / (2.0 * lambda)
}

fn p_min(lambda: f64) -> f64 {
    -((1.0 - lambda) / lambda.powi(3)).powf(lambda - 1.0) / (2.0 * lambda)
}

/// Strict local maxima of the periodic samples `v[0..m]`.
fn cyclic_maxima(v: &[f64]) -> usize {
    let m = v.len();
    (0..m).filter(|&i| v[i] > v[(i + m - 1) % m] && v[i] >= v[(i + 1) % m]).count()
}

fn c1_isochrony_two() -> Outcome {
    let p = params(2.0, 1.0);
    let mut worst: f64 = 0.0;
    for s in linspace(0.05, 0.95, 20) {
        for method in [Method::Quadrature, Method::Flight] {
            let t = period::period(&p, Level::Fraction(s), method, 1e-10).map_err(fail)?;
            worst = worst.max((t - PI).abs());
        }
    }
    check(worst <= 1e-8, format!("20 levels x 2 methods, max |T - pi| = {worst:.2e} (limit 1e-8)"))
}

fn c2_isochrony_half() -> Outcome {
    let p = params(0.5, -1.0);
    let pc = p_min(0.5);
    let mut worst: f64 = 0.0;
    for s in linspace(0.05, 0.95, 20) {
        // the elliptic range of B = -1 is P < P_min; P_min / s runs through it
        let pressure = pc / s;
        for method in [Method::Quadrature, Method::Flight] {
            let t = period::period(&p, Level::Pressure(pressure), method, 1e-10).map_err(fail)?;
            worst = worst.max((t - TAU).abs());
        }
    }
    check(worst <= 1e-8, format!("20 levels P = P_min/s x 2 methods, max |T - 2pi| = {worst:.2e} (limit 1e-8)"))
}

fn c3_gap_fill() -> Outcome {
    let mut closest = f64::INFINITY;
    for lambda in [1.1, 1.2, 1.3, 1.33, 1.5, 1.9] {
        let p = params(lambda, 1.0);
        let table = period::period_table(&p, 400, 1e-3, 1.0 - 1e-3, Spacing::Logit, 1e-10).map_err(fail)?;
        let upper = TAU / (2.0 * lambda).sqrt();
        for t in table.periods() {
            if !(PI < t && t < upper) {
                return Err(format!("lambda = {lambda}: T = {t} escapes (pi, {upper})"));
            }
            closest = closest.min(t - PI).min(upper - t);
        }
        let scan = classify::count_elliptic(lambda, Sign::Plus, Mode::Scan).map_err(fail)?;
        if scan != Classification::None {
            return Err(format!("lambda = {lambda}: scan gives {scan:?}"));
        }
    }
    Ok(format!("6 lambdas x 400 levels inside the open interval (closest approach {closest:.2e}); scan = none"))
}

fn c4_count_formula() -> Outcome {
    let cases: [(f64, &[u32]); 4] = [(4.5, &[]), (5.0, &[3]), (8.0, &[3]), (12.5, &[3, 4])];
    for (lambda, expected) in cases {
        let expected = if expected.is_empty() {
            Classification::None
        } else {
            Classification::Finite { windings: expected.to_vec() }
        };
        let table = classify::count_elliptic(lambda, Sign::Plus, Mode::Table).map_err(fail)?;
        let scan = classify::count_elliptic(lambda, Sign::Plus, Mode::Scan).map_err(fail)?;
        if table != expected || scan != expected {
            return Err(format!("lambda = {lambda}: table {table:?}, scan {scan:?}, expected {expected:?}"));
        }
    }
    let orbit = classify::find_periodic(5.0, Sign::Plus, 3, 1e-10).map_err(fail)?;
    let t_err = (orbit.period - TAU / 3.0).abs();
    let t_flight = period::period(&orbit.params, Level::Pressure(orbit.pressure), Method::Flight, 1e-10).map_err(fail)?;
    let flight_err = (t_flight - TAU / 3.0).abs();
    let opts = ProfileOptions { tol: 1e-12, closure_tol: 1e-6 };
    let profile = classify::reconstruct_profile(&orbit.params, orbit.pressure, 3, 1024, &opts).map_err(fail)?;
    let m = profile.psi.len() - 1;
    let scale = profile.psi.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let closure = (profile.psi[m] - profile.psi[0]).abs().max((profile.psi_prime[m] - profile.psi_prime[0]).abs()) / scale;
    let maxima = cyclic_maxima(&profile.psi[..m]);
    check(
        t_err <= 1e-9 && flight_err <= 1e-9 && closure <= 1e-6 && maxima == 3,
        format!(
            "table = scan at 4.5/5/8/12.5; n = 3 at lambda = 5: |T - 2pi/3| = {t_err:.1e} (flight {flight_err:.1e}), closure {closure:.1e}, {maxima} maxima"
        ),
    )
}

fn c5_extremal_pressures() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let lambda = rng.gen_range(1.01..20.0);
        let c = dynamics::elliptic_center(&params(lambda, 1.0)).map_err(fail)?;
        worst = worst.max((c.extremal_pressure / p_max(lambda) - 1.0).abs());
        let lambda = rng.gen_range(0.05..0.99);
        let c = dynamics::elliptic_center(&params(lambda, -1.0)).map_err(fail)?;
        worst = worst.max((c.extremal_pressure / p_min(lambda) - 1.0).abs());
    }
    check(worst <= 1e-10, format!("100 random lambdas, max relative error {worst:.2e} (limit 1e-10)"))
}

fn c6_duality() -> Outcome {
    let m = 1024;
    let grid = uniform_grid(m);
    let psi = grid.iter().map(|t| 0.125 + (2.0 * t).cos() / 16.0).collect();
    let dpsi = grid.iter().map(|t| -(2.0 * t).sin() / 8.0).collect();
    let source = SolutionProfile::from_samples(2.0, 1.0, 3.0 / 128.0, 2, psi, dpsi).map_err(fail)?;
    let dual = classify::conjugate_dual(&source).map_err(fail)?;
    let residual = dynamics::pressure_residual_profile(0.5, &dual).map_err(fail)?;
    let lo = residual.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = residual.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let level_err = (0.5 * (lo + hi) + 1.0 / 32.0).abs().max((dual.pressure + 1.0 / 32.0).abs());

    let back = classify::conjugate_dual(&dual).map_err(fail)?;
    let argmax = |v: &[f64]| (0..m).max_by(|&a, &b| v[a].total_cmp(&v[b])).unwrap_or(0);
    let shift = (argmax(&back.psi) + m - argmax(&source.psi)) % m;
    let round_trip = (0..m).map(|i| (back.psi[(i + shift) % m] - source.psi[i]).abs()).fold(0.0, f64::max);

    let t_dual = period::period(&params(0.5, dual.bernoulli), Level::Pressure(dual.pressure), Method::Quadrature, 1e-10)
        .map_err(fail)?;
    let period_err = (t_dual - TAU).abs();
    check(
        hi - lo <= 1e-6 && level_err <= 1e-6 && round_trip <= 1e-7 && period_err <= 1e-8,
        format!(
            "residual spread {:.1e}, |P + 1/32| = {level_err:.1e}, round trip {round_trip:.1e}, |T_dual - 2pi| = {period_err:.1e}",
            hi - lo
        ),
    )
}

fn c7_monge_ampere() -> Outcome {
    let cases: [(f64, f64, usize); 4] = [(5.0, 4.5, 0), (6.0, 5.0, 1), (12.0, 8.0, 1), (21.0, 12.5, 2)];
    for (alpha, lambda, count) in cases {
        let (l, c) = classify::ma_count(alpha).map_err(fail)?;
        if l != lambda || c.count() != Some(count) {
            return Err(format!("alpha = {alpha}: got ({l}, {c:?})"));
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    for _ in 0..200 {
        let alpha = rng.gen_range(-2.0f64..=40.0);
        if alpha == -2.0 {
            continue;
        }
        let (l, c) = classify::ma_count(alpha).map_err(fail)?;
        let direct = classify::count_elliptic(2.0 + alpha / 2.0, Sign::Plus, Mode::Table).map_err(fail)?;
        // integers strictly inside (2, √(4 + α))
        let windings: Vec<u32> = (3u32..20).filter(|&n| f64::from(n * n) < 4.0 + alpha).collect();
        let by_formula = match windings.len() {
            _ if alpha == 0.0 => Classification::Continuum,
            0 => Classification::None,
            _ if alpha <= 5.0 => Classification::None,
            _ => Classification::Finite { windings },
        };
        if l != 2.0 + alpha / 2.0 || c != direct || c != by_formula {
            return Err(format!("alpha = {alpha}: ma {c:?}, direct {direct:?}, formula {by_formula:?}"));
        }
    }
    Ok("alpha = 5/6/12/21 -> 0/1/1/2; 200 random alpha agree with the direct count".into())
}

fn c8_oracle_equivalence() -> Outcome {
    let tol = 1e-8;
    let mut worst: f64 = 0.0;
    let mut cells = 0;
    for lambda in [1.2, 1.5, 2.0, 3.0, 4.5, 5.0, 8.0, 12.5] {
        let p = params(lambda, 1.0);
        for s in linspace(0.1, 0.9, 9) {
            let q = period::period(&p, Level::Fraction(s), Method::Quadrature, tol).map_err(fail)?;
            let f = period::period(&p, Level::Fraction(s), Method::Flight, tol).map_err(fail)?;
            worst = worst.max((q - f).abs());
            cells += 1;
        }
    }
    check(worst <= 5.0 * tol, format!("{cells} (lambda, s) cells, max |T_quad - T_flight| = {worst:.2e} (limit 5e-8)"))
}

fn c9_conservation_covariance() -> Outcome {
    let mut worst_ratio: f64 = 0.0;
    let mut runs = 0;
    let branches = [(1.2, 1.0), (2.0, 1.0), (5.0, 1.0), (12.5, 1.0), (0.3, -1.0), (0.5, -1.0), (0.7, -1.0)];
    for (lambda, b) in branches {
        let p = params(lambda, b);
        let pc = dynamics::elliptic_center(&p).map_err(fail)?.extremal_pressure;
        for s in [0.1, 0.5, 0.9] {
            let pressure = if b > 0.0 { s * pc } else { pc / s };
            let (_, x_plus) = period::turning_points(&p, pressure).map_err(fail)?;
            let t = period::period(&p, Level::Pressure(pressure), Method::Quadrature, 1e-11).map_err(fail)?;
            for tol in [1e-8, 1e-10, 1e-12] {
                let span = 3.0 * t;
                let traj = dynamics::integrate_orbit(&p, &PhaseState::new(x_plus, 0.0), span, tol).map_err(fail)?;
                let drift = traj.max_pressure_drift().map_err(fail)?;
                worst_ratio = worst_ratio.max(drift / (tol * span));
                runs += 1;
            }
        }
    }
    if worst_ratio > 10.0 {
        return Err(format!("drift reaches {worst_ratio:.2} x tol x span"));
    }

    let mut worst_scale: f64 = 0.0;
    for (lambda, b) in [(1.5, 1.0), (5.0, 1.0), (12.5, 1.0), (0.3, -1.0), (0.7, -1.0)] {
        let p = params(lambda, b);
        let pc = dynamics::elliptic_center(&p).map_err(fail)?.extremal_pressure;
        for s in [0.2, 0.6] {
            let pressure = if b > 0.0 { s * pc } else { pc / s };
            let t = period::period(&p, Level::Pressure(pressure), Method::Quadrature, 1e-11).map_err(fail)?;
            let (_, x_plus) = period::turning_points(&p, pressure).map_err(fail)?;
            for c in [0.5, 2.0, 10.0] {
                let (q, _, pq) = dynamics::scale_solution(c, &p, &PhaseState::new(x_plus, 0.0), pressure).map_err(fail)?;
                let tq = period::period(&q, Level::Pressure(pq), Method::Quadrature, 1e-11).map_err(fail)?;
                worst_scale = worst_scale.max((tq - t).abs());
            }
        }
    }
    check(
        worst_scale <= 1e-9,
        format!("{runs} integrations, max drift {worst_ratio:.3} x tol x span (limit 10); rescaled periods within {worst_scale:.1e}"),
    )
}

fn c10_field() -> Outcome {
    let orbit = classify::find_periodic(5.0, Sign::Plus, 3, 1e-10).map_err(fail)?;
    let opts = ProfileOptions { tol: 1e-12, closure_tol: 1e-6 };
    let profile = classify::reconstruct_profile(&orbit.params, orbit.pressure, 3, 4096, &opts).map_err(fail)?;
    let mut norms = Vec::new();
    for k in 0..4 {
        let nr = 16 << k;
        let grid = field::velocity_field(&profile, &GridSpec::new(0.5, 1.5, nr, 4 * nr)).map_err(fail)?;
        let r = field::euler_residual(&grid, 5.0).map_err(fail)?;
        norms.push((r.div_norm, r.momentum_norm));
    }
    let ratios: Vec<(f64, f64)> = norms.windows(2).map(|w| (w[0].0 / w[1].0, w[0].1 / w[1].1)).collect();
    let second_order = ratios.iter().all(|&(d, m)| (3.5..=4.5).contains(&d) && (3.5..=4.5).contains(&m));

    let rotation = SolutionProfile::from_samples(2.0, 1.0, 1.0 / 32.0, 1, vec![0.125; 65], vec![0.0; 65]).map_err(fail)?;
    let grid = field::velocity_field(&rotation, &GridSpec::new(0.5, 1.5, 32, 64)).map_err(fail)?;
    let exact = field::euler_residual(&grid, 2.0).map_err(fail)?;
    let rotation_ok = exact.div_norm < 1e-12 && exact.momentum_norm < 1e-12;

    let shown: Vec<String> = ratios.iter().map(|(d, m)| format!("{d:.2}/{m:.2}")).collect();
    check(
        second_order && rotation_ok,
        format!(
            "lambda = 5, n = 3 div/momentum ratios {} (range 3.5-4.5); rotation residuals {:.1e}/{:.1e}",
            shown.join(", "),
            exact.div_norm,
            exact.momentum_norm
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("isochrony at lambda = 2", c1_isochrony_two),
        ("isochrony at lambda = 1/2", c2_isochrony_half),
        ("period bounds for lambda in (1, 2)", c3_gap_fill),
        ("count formula for lambda > 9/2", c4_count_formula),
        ("extremal pressures", c5_extremal_pressures),
        ("duality", c6_duality),
        ("Monge-Ampere count", c7_monge_ampere),
        ("quadrature vs flight", c8_oracle_equivalence),
        ("conservation and covariance", c9_conservation_covariance),
        ("Euler field residuals", c10_field),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag}  {name}: {detail}", i + 1);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
