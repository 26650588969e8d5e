//! Turning points and the period function of the elliptic center.
//!
//! Everything is computed in the frame where the center sits at `x = 1`
//! (dilation by `1/x_c`), which leaves periods unchanged and keeps the
//! arithmetic well scaled for any `λ`. In that frame
//!
//! ```text
//! y² = λ² (G(x) - E),   G(x) = (2/e) x^e - x²,   e = (2λ-2)/λ,
//! ```
//!
//! with `E = 2P / (λ² x_c²)` and `G(1) = 1/(λ-1)` at the center.
//!
//! Levels are addressed either by raw pressure or by the normalized
//! coordinate `s ∈ (0, 1)`: `s = P/P_max` when `B > 0` and `s = P_min/P`
//! when `B < 0`. In both cases `s → 1` at the center and `s → 0` at the
//! outer boundary of the elliptic region.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{self, Params};
use crate::error::{Error, Result};
use crate::numerics::ode::{self, Dopri5, OutOfDomain, StepError};
use crate::numerics::{quadrature, roots};

/// Levels closer than this to either end of `(0, 1)` are rejected by
/// [`period`], [`elliptic_orbit`] and [`period_table`].
pub const LEVEL_MARGIN: f64 = 1e-6;

/// A pressure level of the elliptic region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Level {
    Pressure(f64),
    /// Normalized coordinate `s`.
    Fraction(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Singular integral `2 ∫ dx / √R(x)` between the turning points.
    Quadrature,
    /// Time of flight of the integrated orbit around one loop.
    Flight,
}

/// A closed orbit of the elliptic region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipticOrbit {
    pub params: Params,
    pub pressure: f64,
    pub x_minus: f64,
    pub x_plus: f64,
    /// Full period in θ.
    pub period: f64,
}

/// The elliptic region of one parameter pair, in center-normalized form.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Region {
    pub params: Params,
    pub lambda: f64,
    /// Pressure exponent `e`.
    pub e: f64,
    pub x_c: f64,
    pub p_c: f64,
    /// `G(1)`.
    pub g_max: f64,
}

impl Region {
    pub fn new(params: &Params) -> Result<Self> {
        let center = dynamics::elliptic_center(params)?;
        let lambda = params.lambda();
        Ok(Region {
            params: *params,
            lambda,
            e: params.pressure_exponent(),
            x_c: center.state.x,
            p_c: center.extremal_pressure,
            g_max: 1.0 / (lambda - 1.0),
        })
    }

    fn positive(&self) -> bool {
        self.params.bernoulli() > 0.0
    }

    /// Normalized level of a raw pressure (not range-checked).
    pub fn fraction_of(&self, pressure: f64) -> f64 {
        if self.positive() {
            pressure / self.p_c
        } else {
            self.p_c / pressure
        }
    }

    pub fn pressure_of(&self, s: f64) -> f64 {
        if self.positive() {
            s * self.p_c
        } else {
            self.p_c / s
        }
    }

    /// Normalized energy `E` of level `s`.
    pub fn energy(&self, s: f64) -> f64 {
        if self.positive() {
            s * self.g_max
        } else {
            self.g_max / s
        }
    }

    pub fn range_description(&self) -> String {
        if self.positive() {
            format!("(0, {:e})", self.p_c)
        } else {
            format!("(-inf, {:e})", self.p_c)
        }
    }

    /// Resolves a level to `s`, rejecting anything outside `(0, 1]`.
    pub fn resolve(&self, level: Level) -> Result<f64> {
        let (s, pressure) = match level {
            Level::Pressure(p) => (self.fraction_of(p), p),
            Level::Fraction(s) => (s, self.pressure_of(s)),
        };
        let inside = if self.positive() { pressure > 0.0 } else { pressure < 0.0 };
        if !(s.is_finite() && inside && s > 0.0 && s <= 1.0 + 4.0 * f64::EPSILON) {
            return Err(Error::NoEllipticOrbit { pressure, range: self.range_description() });
        }
        Ok(s.min(1.0))
    }

    pub fn g(&self, x: f64) -> f64 {
        2.0 / self.e * x.powf(self.e) - x * x
    }

    /// `G(x0 + d) - G(x0)` without cancellation for small `d`.
    pub fn g_increment(&self, x0: f64, d: f64) -> f64 {
        2.0 / self.e * x0.powf(self.e) * (self.e * (d / x0).ln_1p()).exp_m1() - d * (2.0 * x0 + d)
    }

    /// Normalized turning points `(x₋, x₊)` of energy `energy`.
    pub fn turning_points(&self, energy: f64) -> Result<(f64, f64)> {
        let e = self.e;
        // G(x) <= (2/e) x^e, so G < E where (2/e) x^e equals E/2 (E > 0) or 2E (E < 0)
        let v = if energy > 0.0 { 0.5 * energy } else { 2.0 * energy };
        let t_inner = ((0.5 * e * v).ln() / e).max(-700.0);
        let outer = if self.positive() {
            (2.0 / e).powf(1.0 / (2.0 - e))
        } else {
            // G(√-E) - E rounds to zero when e is very negative
            2.0 * (-energy).sqrt()
        };
        let f = |t: f64| self.g(t.exp()) - energy;
        let solve = |a: f64, b: f64| {
            roots::brent(f, a, b, 1e-15, 300)
                .map(|r| r.x.exp())
                .map_err(|err| Error::ToleranceNotMet(format!("turning point search failed: {err:?}")))
        };
        if t_inner == -700.0 && f(t_inner) >= 0.0 {
            return Err(Error::DegenerateOrbit(format!(
                "inner turning point of level E = {energy:e} is below floating-point range"
            )));
        }
        let x_minus = solve(t_inner.min(0.0), 0.0)?;
        let x_plus = solve(0.0, outer.ln().max(0.0))?;
        Ok((x_minus, x_plus))
    }
}

/// The two turning points `(x₋, x₊)` of the orbit at pressure `pressure`,
/// i.e. the positive roots of `R(x) = B x^((2λ-2)/λ) - λ²x² - 2P` around the
/// center. At the center level both equal the center abscissa.
pub fn turning_points(params: &Params, pressure: f64) -> Result<(f64, f64)> {
    let region = Region::new(params)?;
    let s = region.resolve(Level::Pressure(pressure))?;
    if 1.0 - s <= 16.0 * f64::EPSILON {
        return Ok((region.x_c, region.x_c));
    }
    let (lo, hi) = region.turning_points(region.energy(s))?;
    Ok((lo * region.x_c, hi * region.x_c))
}

fn check_quadrature_tol(tol: f64) -> Result<()> {
    if (1e-13..=1e-3).contains(&tol) {
        Ok(())
    } else {
        Err(Error::Invalid(format!("period tolerance must lie in [1e-13, 1e-3], got {tol}")))
    }
}

fn check_margin(s: f64) -> Result<()> {
    if (LEVEL_MARGIN..=1.0 - LEVEL_MARGIN).contains(&s) {
        Ok(())
    } else {
        Err(Error::DegenerateOrbit(format!(
            "normalized level s = {s} lies within {LEVEL_MARGIN:e} of the end of the elliptic range; use period_limits"
        )))
    }
}

/// Period by quadrature in the normalized frame, for `s` inside the margin.
pub(crate) fn quadrature_period(region: &Region, s: f64, tol: f64) -> Result<f64> {
    let energy = region.energy(s);
    let (x_minus, x_plus) = region.turning_points(energy)?;
    let half_width = 0.5 * (x_plus - x_minus);
    // x = x₋ + h(1 - cos v) on the left half and x = x₊ - h(1 - cos v) on
    // the right; dx = h sin v dv cancels the inverse square roots.
    let integrand = |x0: f64, sign: f64| {
        move |w: f64| {
            let d = 2.0 * half_width * (0.5 * w).sin().powi(2);
            let rad = region.g_increment(x0, sign * d);
            half_width * w.sin() / rad.max(f64::MIN_POSITIVE).sqrt()
        }
    };
    let abs_tol = 0.25 * tol * region.lambda;
    let budget = 4000;
    let run = |x0: f64, sign: f64| {
        quadrature::integrate(integrand(x0, sign), 0.0, 0.5 * PI, abs_tol, budget).map_err(|e| {
            Error::ToleranceNotMet(format!("period quadrature at s = {s} did not converge: {e:?}"))
        })
    };
    let left = run(x_minus, 1.0)?;
    let right = run(x_plus, -1.0)?;
    Ok(2.0 / region.lambda * (left.value + right.value))
}

/// Period by time of flight: from `(x₊, 0)` through the section `y = 0` at
/// `x₋` and back to `(x₊, 0)`.
/// Flight in `u = ln x` with `dθ = w dσ`, `w = x/(1+x)`:
///
/// ```text
/// u' = y/(1+x),   y' = λ² (x^e - x²)/(1+x),   θ' = w.
/// ```
///
/// Near the inner turning point `x` can be far below any resolvable step
/// in `θ`; in `σ` the turn is a smooth reflection off an exponential wall.
/// Far out, `σ ≈ θ`.
///
/// Close to the outer boundary `dT/ds` grows large, so rounding-level
/// drift of the level along the flown orbit limits the attainable
/// accuracy there (about `1e-10` at `s = 1e-6`, `λ = 12.5`).
pub(crate) fn flight_period(region: &Region, s: f64, tol: f64) -> Result<f64> {
    let energy = region.energy(s);
    let (x_minus, x_plus) = region.turning_points(energy)?;
    let (lam, e) = (region.lambda, region.e);
    let l2 = lam * lam;
    // x dP/dx in terms of u
    let force = move |u: f64| l2 * ((e * u).exp() - (2.0 * u).exp());
    let rhs = move |z: &[f64; 3]| -> std::result::Result<[f64; 3], OutOfDomain> {
        let x = z[0].exp();
        let damp = 1.0 / (1.0 + x);
        let f = [z[1] * damp, force(z[0]) * damp, x * damp];
        if f.iter().all(|v| v.is_finite()) {
            Ok(f)
        } else {
            Err(OutOfDomain)
        }
    };
    // ∇P in (u, y, θ), relative to the size of the level
    let unit = 1.0 / (1.0 + energy.abs());
    let grad = move |z: &[f64; 3]| [unit * force(z[0]), -unit * z[1], 0.0];
    let int_tol = (1e-3 * tol).clamp(1e-13, 1e-6);
    // small orbits near the center need errors relative to their size
    let width = (x_plus / x_minus).ln().min(1.0);
    let opts = ode::Options { tol: int_tol, scale: width, max_steps: 5_000_000 };
    let mut ode = Dopri5::new(rhs, Some(grad), 0.0, [x_plus.ln(), 0.0, 0.0], 0.05 / lam.max(1.0), opts)
        .map_err(|_| Error::domain(format!("flight cannot start at x = {x_plus:e}")))?;
    let (center_limit, boundary_limit) = limits(lam);
    let horizon = 20.0 * center_limit.max(boundary_limit);
    let mut crossings = 0;
    while ode.state()[2] < horizon {
        let seg = ode.step(f64::INFINITY).map_err(|err| match err {
            StepError::Domain { state, .. } => Error::domain(format!("flight left the phase domain at u = {}", state[0])),
            StepError::StepTooSmall { t } => Error::ToleranceNotMet(format!("flight step size collapsed at sigma = {t}")),
            StepError::MaxSteps => Error::ToleranceNotMet("flight step budget exhausted".into()),
        })?;
        let (y0, y1) = (seg.y0[1], seg.y1[1]);
        let crossed = if crossings == 0 { y0 < 0.0 && y1 >= 0.0 } else { y0 > 0.0 && y1 <= 0.0 };
        if !crossed {
            continue;
        }
        crossings += 1;
        if crossings == 2 {
            // full steps from the segment start, not the 4th-order interpolant
            let base = Dopri5::new(rhs, None::<ode::NoInvariant<3>>, seg.t0, seg.y0, seg.h, opts)
                .map_err(|_| Error::domain("flight segment cannot be restarted"))?;
            let at = |h: f64| base.probe(h).map_err(|_| Error::domain("flight segment left the phase domain"));
            let root = roots::brent(|h| at(h).map_or(f64::NAN, |z| z[1]), 0.0, seg.h, 1e-16, 200)
                .map_err(|e| Error::ToleranceNotMet(format!("section crossing not located: {e:?}")))?;
            return Ok(at(root.x)?[2]);
        }
    }
    Err(Error::ToleranceNotMet(format!("orbit at s = {s} did not return within theta = {horizon}")))
}

/// Full period `T` of the closed orbit at `level`, absolute accuracy `tol`.
pub fn period(params: &Params, level: Level, method: Method, tol: f64) -> Result<f64> {
    check_quadrature_tol(tol)?;
    let region = Region::new(params)?;
    let s = region.resolve(level)?;
    check_margin(s)?;
    match method {
        Method::Quadrature => quadrature_period(&region, s, tol),
        Method::Flight => flight_period(&region, s, tol),
    }
}

/// The closed orbit at `level` with its turning points and period.
pub fn elliptic_orbit(params: &Params, level: Level, tol: f64) -> Result<EllipticOrbit> {
    check_quadrature_tol(tol)?;
    let region = Region::new(params)?;
    let s = region.resolve(level)?;
    check_margin(s)?;
    orbit_at(&region, s, tol)
}

/// The orbit at level `s` without the end-of-range margin.
pub(crate) fn orbit_at(region: &Region, s: f64, tol: f64) -> Result<EllipticOrbit> {
    let (lo, hi) = region.turning_points(region.energy(s))?;
    let pressure = region.pressure_of(s);
    if pressure == 0.0 || !pressure.is_finite() {
        return Err(Error::DegenerateOrbit(format!("pressure of level s = {s:e} is not representable")));
    }
    Ok(EllipticOrbit {
        params: region.params,
        pressure,
        x_minus: lo * region.x_c,
        x_plus: hi * region.x_c,
        period: quadrature_period(region, s, tol)?,
    })
}

fn limits(lambda: f64) -> (f64, f64) {
    let center = 2.0 * PI / (2.0 * lambda).sqrt();
    let boundary = if lambda > 1.0 { PI } else { PI / lambda };
    (center, boundary)
}

/// Limits of the period at the center (`2π/√(2λ)`, from the linearization
/// whose frequency satisfies `ω² = 2λ`) and at the outer boundary of the
/// elliptic region (`π` for `λ > 1`, `π/λ` for `λ < 1`).
pub fn period_limits(params: &Params) -> Result<(f64, f64)> {
    if !params.has_elliptic_region() {
        return Err(Error::domain(format!(
            "no elliptic region for lambda = {}, B = {}",
            params.lambda(),
            params.bernoulli()
        )));
    }
    Ok(limits(params.lambda()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Uniform,
    /// Uniform in `ln(s/(1-s))`: geometric clustering at both ends.
    #[default]
    Logit,
}

/// Levels `s` on `[s_min, s_max]`.
pub fn level_grid(n: usize, s_min: f64, s_max: f64, spacing: Spacing) -> Vec<f64> {
    let logit = |s: f64| (s / (1.0 - s)).ln();
    (0..n)
        .map(|k| {
            let t = k as f64 / (n - 1) as f64;
            match spacing {
                Spacing::Uniform => s_min + t * (s_max - s_min),
                Spacing::Logit => {
                    let z = logit(s_min) + t * (logit(s_max) - logit(s_min));
                    1.0 / (1.0 + (-z).exp())
                }
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodRow {
    pub s: f64,
    pub pressure: f64,
    pub period: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpotCheck {
    pub s: f64,
    pub quadrature: f64,
    pub flight: f64,
}

/// The period function sampled on a grid of levels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodTable {
    pub params: Params,
    pub rows: Vec<PeriodRow>,
    /// Rows re-computed by time of flight.
    pub spot_checks: Vec<SpotCheck>,
}

impl PeriodTable {
    pub fn periods(&self) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().map(|r| r.period)
    }
}

/// Tabulates `T(s)` by quadrature at `n` levels in `[s_min, s_max]` and
/// cross-checks three interior rows against the flight method (agreement
/// within `5 tol` is required).
pub fn period_table(params: &Params, n: usize, s_min: f64, s_max: f64, spacing: Spacing, tol: f64) -> Result<PeriodTable> {
    if n < 2 {
        return Err(Error::Invalid(format!("period table needs at least 2 rows, got {n}")));
    }
    if !(0.0 < s_min && s_min < s_max && s_max < 1.0) {
        return Err(Error::Invalid(format!("need 0 < s_min < s_max < 1, got [{s_min}, {s_max}]")));
    }
    check_quadrature_tol(tol)?;
    let region = Region::new(params)?;
    let levels = level_grid(n, s_min, s_max, spacing);
    for &s in &levels {
        check_margin(s)?;
    }
    let rows = levels
        .par_iter()
        .map(|&s| {
            Ok(PeriodRow { s, pressure: region.pressure_of(s), period: quadrature_period(&region, s, tol)? })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut picks = vec![n / 4, n / 2, (3 * n) / 4];
    picks.dedup();
    let spot_checks = picks
        .par_iter()
        .map(|&i| {
            let row = rows[i];
            let flight = flight_period(&region, row.s, tol)?;
            Ok(SpotCheck { s: row.s, quadrature: row.period, flight })
        })
        .collect::<Result<Vec<_>>>()?;
    for c in &spot_checks {
        if (c.quadrature - c.flight).abs() > 5.0 * tol {
            return Err(Error::ToleranceNotMet(format!(
                "quadrature ({}) and flight ({}) periods disagree at s = {}",
                c.quadrature, c.flight, c.s
            )));
        }
    }
    Ok(PeriodTable { params: *params, rows, spot_checks })
}
