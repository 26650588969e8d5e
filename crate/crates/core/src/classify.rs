//! Counting and constructing 2π-periodic elliptic solutions.
//!
//! A closed orbit of period `T` yields a 2π-periodic profile exactly when
//! `T = 2π/n`. With the period function confined between its limits
//! `2π/√(2λ)` and `π` (for `λ > 1`), the admissible windings are the
//! integers strictly inside `(2, √(2λ))`.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dynamics::{self, map_step_error, Params, PhaseState};
use crate::error::{Error, Result};
use crate::numerics::roots;
use crate::period::{self, level_grid, quadrature_period, EllipticOrbit, Level, Region, Spacing};
use crate::profile::{SolutionProfile, TypeTag, PERIODIC_EXTENSION_TOL};

/// Sign of the normalized Bernoulli constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl TryFrom<f64> for Sign {
    type Error = Error;

    fn try_from(b: f64) -> Result<Self> {
        if b == 1.0 {
            Ok(Sign::Plus)
        } else if b == -1.0 {
            Ok(Sign::Minus)
        } else {
            Err(Error::Invalid(format!("normalized Bernoulli constant must be +1 or -1, got {b}")))
        }
    }
}

/// Number of elliptic 2π-periodic solutions with `P` strictly inside the
/// elliptic range. The pure rotation at the extremal level exists in every
/// case and is not counted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    None,
    /// One entry per solution; `n` is the number of orbit loops in `[0, 2π]`.
    Finite { windings: Vec<u32> },
    /// Every level is 2π-periodic.
    Continuum,
}

impl Classification {
    pub fn count(&self) -> Option<usize> {
        match self {
            Classification::Finite { windings } => Some(windings.len()),
            Classification::None => Some(0),
            Classification::Continuum => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Classification::None => "none",
            Classification::Finite { .. } => "finite",
            Classification::Continuum => "continuum",
        }
    }

    /// The pure rotation at `P = P_max` (or `P_min`) is always a solution.
    pub fn extremal_rotation(&self) -> bool {
        true
    }
}

#[derive(Serialize, Deserialize)]
struct ClassificationRepr {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    windings: Option<Vec<u32>>,
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let windings = match self {
            Classification::Finite { windings } => Some(windings.clone()),
            Classification::None => Some(Vec::new()),
            Classification::Continuum => None,
        };
        ClassificationRepr { kind: self.kind().to_string(), count: windings.as_ref().map(Vec::len), windings }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Classification {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ClassificationRepr::deserialize(deserializer)?;
        match repr.kind.as_str() {
            "none" => Ok(Classification::None),
            "continuum" => Ok(Classification::Continuum),
            "finite" => {
                let windings = repr.windings.ok_or_else(|| D::Error::missing_field("windings"))?;
                if repr.count.is_some_and(|c| c != windings.len()) {
                    return Err(D::Error::custom("count does not match windings"));
                }
                Ok(Classification::Finite { windings })
            }
            other => Err(D::Error::unknown_variant(other, &["none", "finite", "continuum"])),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Closed-form table lookup.
    #[default]
    Table,
    /// Numerical scan of the period function.
    Scan,
}

fn admissible(lambda: f64, sign: Sign) -> Result<Params> {
    let ok = match sign {
        Sign::Plus => lambda > 1.0,
        Sign::Minus => lambda > 0.0 && lambda < 1.0,
    };
    if !(lambda.is_finite() && ok) {
        return Err(Error::domain(format!(
            "no elliptic region for lambda = {lambda} with B = {} (need lambda > 1 for B = 1, 0 < lambda < 1 for B = -1)",
            sign.value()
        )));
    }
    Params::new(lambda, sign.value())
}

/// Integers strictly inside `(2, √(2λ))`, compared as `n² < 2λ`.
pub fn admissible_windings(lambda: f64) -> Vec<u32> {
    (3u32..).take_while(|&n| f64::from(n * n) < 2.0 * lambda).collect()
}

/// The closed-form answer for `(λ, ±1)`.
pub fn count_elliptic_table(lambda: f64, sign: Sign) -> Result<Classification> {
    admissible(lambda, sign)?;
    Ok(match sign {
        Sign::Plus if lambda == 2.0 => Classification::Continuum,
        Sign::Plus if lambda <= 4.5 => Classification::None,
        Sign::Plus => Classification::Finite { windings: admissible_windings(lambda) },
        Sign::Minus if lambda == 0.5 => Classification::Continuum,
        Sign::Minus => Classification::None,
    })
}

/// Settings of the numerical scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    pub samples: usize,
    pub s_min: f64,
    pub s_max: f64,
    pub tol: f64,
    /// Crossings closer than this in `s` are merged.
    pub merge: f64,
    /// Distance of `2π/n` from a period limit below which `n` is reported
    /// as boundary-grazing.
    pub grazing: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { samples: 400, s_min: 1e-3, s_max: 1.0 - 1e-3, tol: 1e-11, merge: 1e-4, grazing: 1e-6 }
    }
}

/// One level where `T(s) = 2π/n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub winding: u32,
    pub s: f64,
    pub pressure: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub classification: Classification,
    pub crossings: Vec<Crossing>,
    /// Smallest and largest sampled period.
    pub period_range: (f64, f64),
    pub isochronous: bool,
    pub diagnostics: Vec<String>,
}

/// Periods at `levels` by quadrature, in order.
fn sample_periods(region: &Region, levels: &[f64], tol: f64) -> Result<Vec<f64>> {
    levels.par_iter().map(|&s| quadrature_period(region, s, tol)).collect()
}

fn logit(s: f64) -> f64 {
    (s / (1.0 - s)).ln()
}

fn logistic(u: f64) -> f64 {
    1.0 / (1.0 + (-u).exp())
}

/// `T(s) = target` between levels `a` and `b`, by Brent iteration on
/// `logit(s)` so that levels near either end stay resolvable.
fn refine_level(region: &Region, target: f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    let inner_tol = (0.1 * tol).max(1e-13);
    let mut failure = None;
    let root = roots::brent(
        |u| match quadrature_period(region, logistic(u), inner_tol) {
            Ok(t) => t - target,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        logit(a),
        logit(b),
        1e-14,
        200,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    root.map(|r| logistic(r.x))
        .map_err(|e| Error::ToleranceNotMet(format!("level refinement for T = {target} failed: {e:?}")))
}

fn grazing_diagnostics(lambda: f64, limits: (f64, f64), grazing: f64) -> Vec<String> {
    let mut out = Vec::new();
    let lo = limits.0.min(limits.1);
    let n_max = (TAU / lo).ceil() as u32 + 1;
    for n in 1..=n_max {
        let target = TAU / n as f64;
        for (name, limit) in [("center", limits.0), ("boundary", limits.1)] {
            if (target - limit).abs() <= grazing {
                out.push(format!(
                    "boundary-grazing: 2pi/{n} = {target} lies within {grazing:e} of the {name} limit {limit} at lambda = {lambda}"
                ));
            }
        }
    }
    out
}

/// Windings `n` whose period `2π/n` lies strictly inside the limits and
/// farther than `grazing` from both.
fn interior_windings(limits: (f64, f64), grazing: f64) -> Vec<u32> {
    let (lo, hi) = (limits.0.min(limits.1), limits.0.max(limits.1));
    let n_lo = (TAU / hi).floor().max(1.0) as u32;
    let n_hi = (TAU / lo).ceil() as u32;
    (n_lo..=n_hi)
        .filter(|&n| {
            let t = TAU / n as f64;
            lo + grazing < t && t < hi - grazing
        })
        .collect()
}

/// Smallest level of the boundary-side tail.
const TAIL_FLOOR: f64 = 1e-300;
/// Closest approach `1 - s` of the center-side tail.
const CENTER_TAIL_FLOOR: f64 = 1e-10;

/// The period function sampled on the scan grid, plus tail levels toward
/// either end of the range while some interior `2π/n` is not yet bracketed.
struct Curve {
    /// `(s, T)` by increasing `s`.
    points: Vec<(f64, f64)>,
    notes: Vec<String>,
}

impl Curve {
    fn range(&self) -> (f64, f64) {
        self.points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &(_, t)| (a.min(t), b.max(t)))
    }

    fn covers(&self, target: f64) -> bool {
        let (a, b) = self.range();
        a < target && target < b
    }
}

fn sample_curve(region: &Region, limits: (f64, f64), windings: &[u32], opts: &ScanOptions) -> Result<Curve> {
    let levels = level_grid(opts.samples, opts.s_min, opts.s_max, Spacing::Logit);
    let periods = sample_periods(region, &levels, opts.tol)?;
    let mut curve = Curve { points: levels.into_iter().zip(periods).collect(), notes: Vec::new() };
    let (center, boundary) = limits;
    let pending = |curve: &Curve, end_t: f64, limit: f64| {
        windings.iter().any(|&n| {
            let t = TAU / n as f64;
            !curve.covers(t) && (t - end_t) * (t - limit) < 0.0
        })
    };

    // boundary side: decades, widening once the period moves slowly
    let mut gap = 1.0f64;
    while pending(&curve, curve.points[0].1, boundary) {
        let s = curve.points[0].0 * 10f64.powf(-gap);
        if s < TAIL_FLOOR {
            curve.notes.push(format!("tail scan stopped at the level floor {TAIL_FLOOR:e}"));
            break;
        }
        match quadrature_period(region, s, opts.tol) {
            Ok(t) => curve.points.insert(0, (s, t)),
            Err(e) => {
                curve.notes.push(format!("tail scan stopped at s = {s:e}: {e}"));
                break;
            }
        }
        if curve.points.len() > opts.samples + 10 {
            gap = (gap * 1.5).min(20.0);
        }
    }

    while pending(&curve, curve.points[curve.points.len() - 1].1, center) {
        let gap_c = 0.1 * (1.0 - curve.points[curve.points.len() - 1].0);
        if gap_c < CENTER_TAIL_FLOOR {
            curve.notes.push(format!("center tail stopped at 1 - s = {CENTER_TAIL_FLOOR:e}"));
            break;
        }
        let s = 1.0 - gap_c;
        match quadrature_period(region, s, opts.tol) {
            Ok(t) => curve.points.push((s, t)),
            Err(e) => {
                curve.notes.push(format!("center tail stopped at s = {s}: {e}"));
                break;
            }
        }
    }
    for &n in windings {
        if !curve.covers(TAU / n as f64) {
            curve.notes.push(format!("unresolved: 2pi/{n} lies inside the period limits but was not reached by the scan"));
        }
    }
    Ok(curve)
}

/// All levels where the sampled curve crosses `target`, refined and merged.
fn crossings_of(region: &Region, curve: &Curve, target: f64, opts: &ScanOptions) -> Result<Vec<f64>> {
    let mut found: Vec<f64> = Vec::new();
    for w in curve.points.windows(2) {
        let ((sa, ta), (sb, tb)) = (w[0], w[1]);
        let (a, b) = (ta - target, tb - target);
        if a == 0.0 || a.signum() != b.signum() {
            let s = if a == 0.0 { sa } else { refine_level(region, target, sa, sb, opts.tol)? };
            if found.iter().all(|&f| (f - s).abs() >= opts.merge) {
                found.push(s);
            }
        }
    }
    Ok(found)
}

/// Counts solutions by scanning the period function for crossings of
/// `2π/n`, after an isochrony probe at `s = 0.25, 0.5, 0.75`.
///
/// The grid of `opts.samples` levels on `[s_min, s_max]` is extended toward
/// `s → 0` and `s → 1` while a winding strictly inside the period limits
/// remains unbracketed; the period may approach its boundary value only at
/// very small `s`.
pub fn scan_classification(lambda: f64, sign: Sign, opts: &ScanOptions) -> Result<ScanReport> {
    let params = admissible(lambda, sign)?;
    let region = Region::new(&params)?;
    let limits = period::period_limits(&params)?;
    let mut diagnostics = grazing_diagnostics(lambda, limits, opts.grazing);

    let probe = sample_periods(&region, &[0.25, 0.5, 0.75], opts.tol)?;
    let (pmin, pmax) = probe.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &t| (a.min(t), b.max(t)));
    if pmax - pmin <= 1e-9 {
        let t = probe[1];
        let n = (TAU / t).round();
        let classification = if n >= 1.0 && (t - TAU / n).abs() <= 1e-9 {
            Classification::Continuum
        } else {
            Classification::None
        };
        return Ok(ScanReport { classification, crossings: vec![], period_range: (pmin, pmax), isochronous: true, diagnostics });
    }

    let curve = sample_curve(&region, limits, &interior_windings(limits, opts.grazing), opts)?;
    let (t_min, t_max) = curve.range();
    diagnostics.extend(curve.notes.iter().cloned());

    let n_lo = (TAU / t_max).ceil().max(1.0) as u32;
    let n_hi = (TAU / t_min).floor() as u32;
    let mut crossings = Vec::new();
    for n in n_lo..=n_hi {
        let target = TAU / n as f64;
        if !(t_min < target && target < t_max) {
            continue;
        }
        let found = crossings_of(&region, &curve, target, opts)?;
        crossings.extend(found.into_iter().map(|s| Crossing { winding: n, s, pressure: region.pressure_of(s) }));
    }

    let classification = if crossings.is_empty() {
        Classification::None
    } else {
        Classification::Finite { windings: crossings.iter().map(|c| c.winding).collect() }
    };
    Ok(ScanReport { classification, crossings, period_range: (t_min, t_max), isochronous: false, diagnostics })
}

/// Classification of `(λ, ±1)` by table lookup or by numerical scan.
pub fn count_elliptic(lambda: f64, sign: Sign, mode: Mode) -> Result<Classification> {
    match mode {
        Mode::Table => count_elliptic_table(lambda, sign),
        Mode::Scan => Ok(scan_classification(lambda, sign, &ScanOptions::default())?.classification),
    }
}

fn is_continuum(lambda: f64, sign: Sign) -> bool {
    match sign {
        Sign::Plus => lambda == 2.0,
        Sign::Minus => lambda == 0.5,
    }
}

/// The orbit of period `2π/n` for `(λ, ±1)`, located to `|T - 2π/n| <= tol`.
///
/// `2π/n` must lie strictly inside the range of the period function; hits
/// within `1e-6` of a limit are refused as boundary-grazing. When several
/// levels share the period the one with the smallest `s` is returned.
pub fn find_periodic(lambda: f64, sign: Sign, n: u32, tol: f64) -> Result<EllipticOrbit> {
    let params = admissible(lambda, sign)?;
    if is_continuum(lambda, sign) {
        return Err(Error::ContinuumCase { lambda });
    }
    if n == 0 {
        return Err(Error::Invalid("winding number must be positive".into()));
    }
    let opts = ScanOptions { tol: (0.1 * tol).clamp(1e-13, 1e-3), ..ScanOptions::default() };
    let region = Region::new(&params)?;
    let limits = period::period_limits(&params)?;
    let target = TAU / n as f64;
    let (lo, hi) = (limits.0.min(limits.1), limits.0.max(limits.1));
    if (target - lo).abs() <= opts.grazing || (target - hi).abs() <= opts.grazing {
        return Err(Error::NoSolution(format!(
            "boundary-grazing: 2pi/{n} = {target} coincides with a period limit ({lo}, {hi})"
        )));
    }
    if !(lo < target && target < hi) {
        return Err(Error::NoSolution(format!(
            "2pi/{n} = {target} lies outside the open period range ({lo}, {hi}) for lambda = {lambda}"
        )));
    }

    let curve = sample_curve(&region, limits, &[n], &opts)?;
    let Some(&s) = crossings_of(&region, &curve, target, &opts)?.first() else {
        return Err(Error::NoSolution(format!(
            "period 2pi/{n} is not attained on the sampled levels ({})",
            curve.notes.join("; ")
        )));
    };
    let orbit = period::orbit_at(&region, s, opts.tol)?;
    if (orbit.period - target).abs() > tol {
        return Err(Error::ToleranceNotMet(format!(
            "located period {} misses 2pi/{n} by more than {tol:e}",
            orbit.period
        )));
    }
    Ok(orbit)
}

/// Tolerances for [`reconstruct_profile`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileOptions {
    /// Integration tolerance (error per unit step).
    pub tol: f64,
    /// Allowed relative return mismatch after `θ = 2π`.
    pub closure_tol: f64,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions { tol: 1e-12, closure_tol: 1e-6 }
    }
}

/// Integrates the orbit at `pressure` from its upper turning point over
/// `[0, 2π]` and samples it on `samples + 1` uniform angles, without any
/// closure check. `winding` is set to the number of maxima found.
///
/// The center level gives the constant rotation profile.
pub fn integrate_profile(params: &Params, pressure: f64, samples: usize, tol: f64) -> Result<SolutionProfile> {
    if samples < 8 {
        return Err(Error::Invalid(format!("need at least 8 samples, got {samples}")));
    }
    dynamics::check_tolerance(tol)?;
    let region = Region::new(params)?;
    let s = region.resolve(Level::Pressure(pressure))?;
    let lam = params.lambda();
    if 1.0 - s <= 1e-12 {
        let psi = vec![region.x_c; samples + 1];
        let dpsi = vec![0.0; samples + 1];
        let mut p = SolutionProfile::from_samples(lam, params.bernoulli(), pressure, 1, psi, dpsi)?;
        p.type_tag = TypeTag::Rotation;
        return Ok(p);
    }

    let (_, x_plus) = region.turning_points(region.energy(s))?;
    let normalized = Params::new(lam, lam.powi(3) / (lam - 1.0))?;
    let mut ode = dynamics::stepper(&normalized, &PhaseState::new(x_plus, 0.0), tol)?;
    let grid = crate::profile::uniform_grid(samples);
    let mut psi = Vec::with_capacity(samples + 1);
    let mut dpsi = Vec::with_capacity(samples + 1);
    psi.push(x_plus * region.x_c);
    dpsi.push(0.0);
    let mut next = 1;
    while next <= samples {
        let seg = ode.step(TAU).map_err(map_step_error)?;
        while next <= samples && (grid[next] <= seg.t1() || next == samples && ode.t() >= TAU) {
            let y = if next == samples { seg.y1 } else { seg.eval(grid[next]) };
            psi.push(y[0] * region.x_c);
            dpsi.push(y[1] * region.x_c);
            next += 1;
        }
    }

    let mut profile = SolutionProfile::from_samples(lam, params.bernoulli(), pressure, 1, psi, dpsi)?;
    profile.winding = profile.count_maxima().max(1) as u32;
    Ok(profile)
}

/// The closed profile at `pressure` with `n` loops on `[0, 2π]`.
///
/// Fails with `ClosureFailure` when the orbit does not return to its start
/// within `opts.closure_tol`, and with `NoSolution` when the profile does
/// not show exactly `n` maxima.
pub fn reconstruct_profile(params: &Params, pressure: f64, n: u32, samples: usize, opts: &ProfileOptions) -> Result<SolutionProfile> {
    let mut profile = integrate_profile(params, pressure, samples, opts.tol)?;
    if profile.type_tag == TypeTag::Rotation {
        profile.winding = n;
        return Ok(profile);
    }
    let defect = profile.closure_defect();
    if defect > opts.closure_tol {
        return Err(Error::ClosureFailure { defect, tol: opts.closure_tol });
    }
    let maxima = profile.count_maxima();
    if maxima != n as usize {
        return Err(Error::NoSolution(format!("profile has {maxima} maxima on [0, 2pi), expected winding {n}")));
    }
    profile.winding = n;
    Ok(profile)
}

/// Streamline topology of a closed profile.
pub fn classify_profile(profile: &SolutionProfile) -> TypeTag {
    profile.classify()
}

/// Maps a positive profile at exponent `λ` to the profile
/// `θ ↦ ψ(θ/λ)^(1/λ)` of the system with exponent `1/λ`, sampled on the
/// same number of intervals over `[0, 2π]`.
///
/// The dual's pressure is recovered as the mean of its pressure residual,
/// and its Bernoulli constant from the Bernoulli relation at that pressure.
pub fn conjugate_dual(profile: &SolutionProfile) -> Result<SolutionProfile> {
    profile.validate()?;
    let lam = profile.lambda;
    if lam == 1.0 || lam.is_nan() || lam <= 0.0 {
        return Err(Error::domain(format!("conjugacy needs lambda > 0, lambda != 1; got {lam}")));
    }
    let min = profile.min_psi();
    if min <= 0.0 {
        return Err(Error::domain(format!("conjugacy needs psi > 0 everywhere; min psi = {min}")));
    }
    if lam < 1.0 && !profile.is_closed(PERIODIC_EXTENSION_TOL) {
        return Err(Error::domain("dual of a lambda < 1 profile needs a closed (periodic) source"));
    }
    let dual_lambda = 1.0 / lam;
    let m = profile.intervals();
    let grid = crate::profile::uniform_grid(m);
    let mut psi = Vec::with_capacity(m + 1);
    let mut dpsi = Vec::with_capacity(m + 1);
    for &t in &grid {
        let (v, dv) = profile.sample_at(t / lam)?;
        if v <= 0.0 {
            return Err(Error::domain(format!("interpolated psi is not positive at theta = {}", t / lam)));
        }
        let w = v.powf(dual_lambda);
        psi.push(w);
        // d/dθ ψ(θ/λ)^(1/λ) = (1/λ²) ψ^(1/λ - 1) ψ'
        dpsi.push(w / v * dv / (lam * lam));
    }
    let mut dual = SolutionProfile::from_samples(dual_lambda, 0.0, 0.0, 1, psi, dpsi)?;
    let residual = dynamics::pressure_residual_profile(dual_lambda, &dual)?;
    let pressure = residual.iter().sum::<f64>() / residual.len() as f64;
    let mut bsum = 0.0;
    for (&x, &y) in dual.psi.iter().zip(&dual.psi_prime) {
        bsum += dynamics::bernoulli(dual_lambda, pressure, &PhaseState::new(x, y))?;
    }
    dual.pressure = pressure;
    dual.bernoulli = bsum / dual.psi.len() as f64;
    dual.winding = dual.count_maxima().max(1) as u32;
    dual.type_tag = dual.classify();
    Ok(dual)
}

/// Counts solutions of `det D²u = |x|^α` through the correspondence
/// `λ = 2 + α/2` (so that `√(2λ) = √(4 + α)`).
pub fn ma_count(alpha: f64) -> Result<(f64, Classification)> {
    if !(alpha.is_finite() && alpha > -2.0) {
        return Err(Error::domain(format!("Monge-Ampere exponent must satisfy alpha > -2, got {alpha}")));
    }
    let lambda = 2.0 + alpha / 2.0;
    Ok((lambda, count_elliptic_table(lambda, Sign::Plus)?))
}

/// Period that makes a profile with `n` loops close on `[0, 2π]`.
pub fn closing_period(n: u32) -> f64 {
    2.0 * PI / f64::from(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::uniform_grid;

    #[test]
    fn table_examples() {
        assert_eq!(count_elliptic_table(5.0, Sign::Plus).unwrap(), Classification::Finite { windings: vec![3] });
        assert_eq!(count_elliptic_table(3.0, Sign::Plus).unwrap(), Classification::None);
        assert_eq!(count_elliptic_table(2.0, Sign::Plus).unwrap(), Classification::Continuum);
        assert_eq!(count_elliptic_table(12.5, Sign::Plus).unwrap(), Classification::Finite { windings: vec![3, 4] });
        assert_eq!(count_elliptic_table(4.5, Sign::Plus).unwrap(), Classification::None);
        assert_eq!(count_elliptic_table(8.0, Sign::Plus).unwrap(), Classification::Finite { windings: vec![3] });
        assert_eq!(count_elliptic_table(0.5, Sign::Minus).unwrap(), Classification::Continuum);
        assert_eq!(count_elliptic_table(0.3, Sign::Minus).unwrap(), Classification::None);
        assert!(count_elliptic_table(0.5, Sign::Plus).is_err());
        assert!(count_elliptic_table(3.0, Sign::Minus).is_err());
        assert!(count_elliptic_table(1.0, Sign::Plus).is_err());
    }

    #[test]
    fn finite_results_respect_open_window() {
        for k in 0..200 {
            let lam = 4.5 + 0.37 * k as f64;
            if let Classification::Finite { windings } = count_elliptic_table(lam, Sign::Plus).unwrap() {
                for n in windings {
                    assert!(n > 2 && (n as f64) < (2.0 * lam).sqrt());
                }
            }
        }
    }

    #[test]
    fn sign_parsing() {
        assert_eq!(Sign::try_from(1.0).unwrap(), Sign::Plus);
        assert_eq!(Sign::try_from(-1.0).unwrap(), Sign::Minus);
        assert!(Sign::try_from(0.5).is_err());
    }

    #[test]
    fn classification_json() {
        let c = Classification::Finite { windings: vec![3, 4] };
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"kind":"finite","count":2,"windings":[3,4]}"#);
        assert_eq!(serde_json::to_string(&Classification::Continuum).unwrap(), r#"{"kind":"continuum"}"#);
        assert_eq!(serde_json::to_string(&Classification::None).unwrap(), r#"{"kind":"none","count":0,"windings":[]}"#);
        assert_eq!(serde_json::from_str::<Classification>(r#"{"kind":"none"}"#).unwrap(), Classification::None);
        let back: Classification = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<Classification>(r#"{"kind":"finite","count":3,"windings":[3]}"#).is_err());
        assert!(serde_json::from_str::<Classification>(r#"{"kind":"many"}"#).is_err());
    }

    #[test]
    fn find_periodic_lambda_five() {
        let orbit = find_periodic(5.0, Sign::Plus, 3, 1e-10).unwrap();
        assert!((orbit.period - TAU / 3.0).abs() <= 1e-9, "{}", orbit.period);
        let p_max = dynamics::extremal_pressure_closed_form(&orbit.params).unwrap();
        assert!(orbit.pressure > 0.0 && orbit.pressure < p_max);
    }

    #[test]
    fn find_periodic_refusals() {
        assert!(matches!(find_periodic(5.0, Sign::Plus, 2, 1e-10), Err(Error::NoSolution(_))));
        assert!(matches!(find_periodic(5.0, Sign::Plus, 4, 1e-10), Err(Error::NoSolution(_))));
        assert!(matches!(find_periodic(2.0, Sign::Plus, 2, 1e-10), Err(Error::ContinuumCase { .. })));
        assert!(matches!(find_periodic(0.5, Sign::Minus, 1, 1e-10), Err(Error::ContinuumCase { .. })));
        // λ = 8: 2π/4 = π/2 is exactly the center limit
        let err = find_periodic(8.0, Sign::Plus, 4, 1e-10).unwrap_err();
        assert!(err.to_string().contains("boundary-grazing"), "{err}");
    }

    #[test]
    fn reconstruct_linear_profile() {
        let params = Params::new(2.0, 1.0).unwrap();
        let p = reconstruct_profile(&params, 3.0 / 128.0, 2, 256, &ProfileOptions::default()).unwrap();
        assert_eq!(p.type_tag, TypeTag::Elliptic);
        assert_eq!(p.count_maxima(), 2);
        // starts at the maximum, so no phase shift is needed
        for (t, v) in p.theta.iter().zip(&p.psi) {
            assert!((v - (0.125 + (2.0 * t).cos() / 16.0)).abs() < 1e-8);
        }
    }

    #[test]
    fn reconstruct_center_is_rotation() {
        let params = Params::new(2.0, 1.0).unwrap();
        let p = reconstruct_profile(&params, 1.0 / 32.0, 1, 64, &ProfileOptions::default()).unwrap();
        assert_eq!(p.type_tag, TypeTag::Rotation);
        assert!(p.psi.iter().all(|&v| v == 0.125));
    }

    #[test]
    fn reconstruct_rejects_non_closing_level() {
        let params = Params::new(5.0, 1.0).unwrap();
        let p_max = dynamics::extremal_pressure_closed_form(&params).unwrap();
        let err = reconstruct_profile(&params, 0.5 * p_max, 3, 256, &ProfileOptions::default()).unwrap_err();
        assert!(matches!(err, Error::ClosureFailure { .. }), "{err}");
    }

    #[test]
    fn dual_of_linear_profile() {
        let a = 1.0 / 16.0;
        let m = 512;
        let grid = uniform_grid(m);
        let psi = grid.iter().map(|t| 0.125 + a * (2.0 * t).cos()).collect();
        let dpsi = grid.iter().map(|t| -2.0 * a * (2.0 * t).sin()).collect();
        let src = SolutionProfile::from_samples(2.0, 1.0, 3.0 / 128.0, 2, psi, dpsi).unwrap();
        let dual = conjugate_dual(&src).unwrap();
        assert_eq!(dual.lambda, 0.5);
        assert!((dual.pressure + 1.0 / 32.0).abs() < 1e-10, "{}", dual.pressure);
        // B = -(a0² - A²)/4 for ψ² = a0 + A cos θ
        assert!((dual.bernoulli + (0.125f64.powi(2) - a * a) / 4.0).abs() < 1e-10);
        for (t, v) in dual.theta.iter().zip(&dual.psi) {
            assert!((v - (0.125 + a * t.cos()).sqrt()).abs() < 1e-12);
        }
        assert_eq!(dual.winding, 1);
        let back = conjugate_dual(&dual).unwrap();
        assert!(back.aligned_distance(&src).unwrap() < 1e-7);
    }

    #[test]
    fn dual_rejects_vanishing_profiles() {
        let grid = uniform_grid(64);
        let psi = grid.iter().map(|t| t.sin()).collect();
        let dpsi = grid.iter().map(|t| t.cos()).collect();
        let p = SolutionProfile::from_samples(3.0, 1.0, 0.0, 1, psi, dpsi).unwrap();
        assert!(matches!(conjugate_dual(&p), Err(Error::Domain(_))));
    }

    #[test]
    fn ma_examples() {
        assert_eq!(ma_count(5.0).unwrap(), (4.5, Classification::None));
        assert_eq!(ma_count(6.0).unwrap(), (5.0, Classification::Finite { windings: vec![3] }));
        assert_eq!(ma_count(21.0).unwrap(), (12.5, Classification::Finite { windings: vec![3, 4] }));
        assert_eq!(ma_count(0.0).unwrap(), (2.0, Classification::Continuum));
        assert_eq!(ma_count(-1.0).unwrap().1, Classification::None);
        assert!(ma_count(-2.0).is_err());
        assert!(ma_count(f64::NAN).is_err());
    }
}
