//! The planar phase system for angular profiles of homogeneous flows.
//!
//! A stream function `Ψ = r^λ ψ(θ)` solves the steady Euler equations when
//! `(x, y) = (ψ, ψ')` follows
//!
//! ```text
//! x' = y
//! y' = -λ² x + ((λ-1)/λ) B x^((λ-2)/λ)
//! ```
//!
//! where `B` is the Bernoulli constant. The pressure coefficient
//! `P = -y²/2 - λ²x²/2 + (B/2) x^((2λ-2)/λ)` is conserved along the flow.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::ode::{self, Dopri5, OutOfDomain, Segment, StepError};
use crate::profile::SolutionProfile;

/// Exponent and Bernoulli constant of the phase system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    lambda: f64,
    bernoulli: f64,
}

impl Params {
    /// Rejects `λ <= 0`, `λ = 1` and non-finite values.
    pub fn new(lambda: f64, bernoulli: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::domain(format!("lambda must be finite and positive, got {lambda}")));
        }
        if lambda == 1.0 {
            return Err(Error::domain("lambda = 1 is excluded (the pressure relation degenerates)"));
        }
        if !bernoulli.is_finite() {
            return Err(Error::domain(format!("Bernoulli constant must be finite, got {bernoulli}")));
        }
        Ok(Params { lambda, bernoulli })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn bernoulli(&self) -> f64 {
        self.bernoulli
    }

    /// Whether the system has a center in `x > 0`: `(λ - 1) B > 0`.
    pub fn has_elliptic_region(&self) -> bool {
        (self.lambda - 1.0) * self.bernoulli > 0.0
    }

    /// Exponent of the forcing term, `(λ - 2)/λ`.
    pub fn field_exponent(&self) -> f64 {
        (self.lambda - 2.0) / self.lambda
    }

    /// Exponent in the pressure, `(2λ - 2)/λ`.
    pub fn pressure_exponent(&self) -> f64 {
        (2.0 * self.lambda - 2.0) / self.lambda
    }
}

/// A point `(ψ, ψ')` of the phase plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseState {
    pub x: f64,
    pub y: f64,
}

impl PhaseState {
    pub fn new(x: f64, y: f64) -> Self {
        PhaseState { x, y }
    }
}

/// `x^p` on the principal real branch. Integer exponents also accept
/// negative `x`; anything else needs `x > 0`.
pub(crate) fn real_power(x: f64, p: f64) -> Option<f64> {
    if p.fract() == 0.0 && p.abs() < 64.0 {
        if x == 0.0 && p < 0.0 {
            return None;
        }
        return Some(x.powi(p as i32));
    }
    if x > 0.0 {
        Some(x.powf(p))
    } else if x == 0.0 && p > 0.0 {
        Some(0.0)
    } else {
        None
    }
}

fn power_or_domain(x: f64, p: f64) -> Result<f64> {
    real_power(x, p).ok_or_else(|| Error::domain(format!("x^{p} is undefined over the reals at x = {x}")))
}

/// `(x', y')` at `s`.
pub fn vector_field(params: &Params, s: &PhaseState) -> Result<(f64, f64)> {
    let lam = params.lambda;
    let forcing = power_or_domain(s.x, params.field_exponent())?;
    Ok((s.y, -lam * lam * s.x + (lam - 1.0) / lam * params.bernoulli * forcing))
}

/// The conserved pressure coefficient `P` at `s`.
pub fn pressure_hamiltonian(params: &Params, s: &PhaseState) -> Result<f64> {
    let lam = params.lambda;
    let pw = power_or_domain(s.x, params.pressure_exponent())?;
    Ok(-0.5 * s.y * s.y - 0.5 * lam * lam * s.x * s.x + 0.5 * params.bernoulli * pw)
}

/// The Bernoulli constant `(2P + λ²ψ² + ψ'²) ψ^(2/λ - 2)` for pressure `P` at `s`.
pub fn bernoulli(lambda: f64, pressure: f64, s: &PhaseState) -> Result<f64> {
    if s.x <= 0.0 {
        return Err(Error::domain(format!("Bernoulli relation needs psi > 0, got {}", s.x)));
    }
    let pw = power_or_domain(s.x, 2.0 / lambda - 2.0)?;
    Ok((2.0 * pressure + lambda * lambda * s.x * s.x + s.y * s.y) * pw)
}

/// The equilibrium of the elliptic region and the pressure level it sits on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Center {
    pub state: PhaseState,
    pub extremal_pressure: f64,
}

fn require_elliptic(params: &Params) -> Result<()> {
    if params.has_elliptic_region() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "no elliptic region for lambda = {}, B = {} (need (lambda - 1) B > 0)",
            params.lambda, params.bernoulli
        )))
    }
}

/// Extremal pressure from the closed forms
/// `P_max = (1/2λ)((λ-1)/λ³)^(λ-1)` (B = 1) and
/// `P_min = -(1/2λ)((1-λ)/λ³)^(λ-1)` (B = -1), carried to general `B` by
/// the scaling law `P -> |B|^λ P`.
pub fn extremal_pressure_closed_form(params: &Params) -> Result<f64> {
    require_elliptic(params)?;
    let lam = params.lambda;
    let unit = if params.bernoulli > 0.0 {
        ((lam - 1.0) / lam.powi(3)).powf(lam - 1.0) / (2.0 * lam)
    } else {
        -((1.0 - lam) / lam.powi(3)).powf(lam - 1.0) / (2.0 * lam)
    };
    Ok(unit * params.bernoulli.abs().powf(lam))
}

/// Locates the center `(x_c, 0)` by solving `y' = 0` on `x > 0` and
/// evaluates the pressure there.
///
/// At `λ = 2` the system is linear and the center `B/8` is returned exactly.
pub fn elliptic_center(params: &Params) -> Result<Center> {
    require_elliptic(params)?;
    let lam = params.lambda;
    let x_c = if lam == 2.0 {
        params.bernoulli / 8.0
    } else {
        locate_center(params)?
    };
    let state = PhaseState::new(x_c, 0.0);
    let extremal_pressure = pressure_hamiltonian(params, &state)?;
    Ok(Center { state, extremal_pressure })
}

/// Generic route to the center abscissa (also used at `λ = 2`).
pub fn locate_center(params: &Params) -> Result<f64> {
    require_elliptic(params)?;
    let lam = params.lambda;
    let coeff = (lam - 1.0) * params.bernoulli / lam.powi(3);
    // y'/(λ² x) = coeff x^(-2/λ) - 1, monotone decreasing in t = ln x
    let g = |t: f64| coeff * (-2.0 * t / lam).exp() - 1.0;
    let mut lo = -1.0;
    let mut hi = 1.0;
    while g(lo) < 0.0 {
        lo *= 2.0;
        if lo < -1e4 {
            return Err(Error::ToleranceNotMet("could not bracket the center".into()));
        }
    }
    while g(hi) > 0.0 {
        hi *= 2.0;
        if hi > 1e4 {
            return Err(Error::ToleranceNotMet("could not bracket the center".into()));
        }
    }
    let root = crate::numerics::roots::brent(g, lo, hi, 1e-16, 200)
        .map_err(|e| Error::ToleranceNotMet(format!("center root search failed: {e:?}")))?;
    Ok(root.x.exp())
}

/// Applies the dilation `x -> c x`, which maps solutions to solutions when
/// `B -> c^(2/λ) B` and `P -> c² P`.
pub fn scale_solution(c: f64, params: &Params, s: &PhaseState, pressure: f64) -> Result<(Params, PhaseState, f64)> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::domain(format!("scale factor must be positive, got {c}")));
    }
    let lam = params.lambda;
    let scaled = Params::new(lam, c.powf(2.0 / lam) * params.bernoulli)?;
    Ok((scaled, PhaseState::new(c * s.x, c * s.y), c * c * pressure))
}

/// A numerically integrated orbit, with dense output between samples.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub params: Params,
    /// Accepted step boundaries `(θ, state)`; θ strictly increasing.
    pub samples: Vec<(f64, PhaseState)>,
    /// Pressure at the start point.
    pub pressure: f64,
    segments: Vec<Segment>,
}

impl Trajectory {
    pub fn span(&self) -> f64 {
        self.samples.last().map_or(0.0, |s| s.0) - self.samples[0].0
    }

    pub fn end(&self) -> PhaseState {
        self.samples.last().expect("trajectory has samples").1
    }

    /// Interpolated state at `theta` within the integrated span.
    pub fn state_at(&self, theta: f64) -> Option<PhaseState> {
        let t0 = self.samples[0].0;
        if theta < t0 || theta > t0 + self.span() {
            return None;
        }
        if self.segments.is_empty() {
            return Some(self.samples[0].1);
        }
        let idx = self.segments.partition_point(|seg| seg.t1() < theta).min(self.segments.len() - 1);
        let y = self.segments[idx].eval(theta);
        Some(PhaseState::new(y[0], y[1]))
    }

    /// Largest deviation of the pressure from its starting value over the samples.
    pub fn max_pressure_drift(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for (_, s) in &self.samples {
            worst = worst.max((pressure_hamiltonian(&self.params, s)? - self.pressure).abs());
        }
        Ok(worst)
    }
}

pub(crate) fn check_tolerance(tol: f64) -> Result<()> {
    if (1e-13..=1e-6).contains(&tol) {
        Ok(())
    } else {
        Err(Error::Invalid(format!("integration tolerance must lie in [1e-13, 1e-6], got {tol}")))
    }
}

type Rhs = Box<dyn Fn(&ode::State) -> std::result::Result<ode::State, OutOfDomain> + Send + Sync>;
type Grad = Box<dyn Fn(&ode::State) -> ode::State + Send + Sync>;

/// Dormand-Prince stepper for the phase system started at `start`, with the
/// pressure monitored as an invariant.
pub(crate) fn stepper(params: &Params, start: &PhaseState, tol: f64) -> Result<Dopri5<Rhs, Grad>> {
    let p = *params;
    let lam = p.lambda;
    let k = (lam - 1.0) / lam * p.bernoulli;
    let exponent = p.field_exponent();
    let accel = move |x: f64| real_power(x, exponent).map(|f| -lam * lam * x + k * f);
    let rhs: Rhs = Box::new(move |y: &ode::State| accel(y[0]).map(|a| [y[1], a]).ok_or(OutOfDomain));
    // ∇P = (y', -y)
    let grad: Grad = Box::new(move |y: &ode::State| [accel(y[0]).unwrap_or(0.0), -y[1]]);
    let scale = start.x.abs().max(start.y.abs()).max(f64::MIN_POSITIVE);
    let omega = (2.0 * lam).sqrt().max(lam);
    let opts = ode::Options { tol, scale, max_steps: 5_000_000 };
    Dopri5::new(rhs, Some(grad), 0.0, [start.x, start.y], 0.05 / omega, opts).map_err(map_step_error)
}

pub(crate) fn map_step_error(e: StepError) -> Error {
    match e {
        StepError::Domain { t, state } => Error::domain(format!(
            "trajectory reached x = {:e} at theta = {t}, where the forcing power is undefined",
            state[0]
        )),
        StepError::StepTooSmall { t } => Error::ToleranceNotMet(format!("step size collapsed at theta = {t}")),
        StepError::MaxSteps => Error::ToleranceNotMet("step budget exhausted".into()),
    }
}

/// Integrates the phase system from `start` over `[0, span]` with adaptive
/// Dormand-Prince steps (local error per unit step at most `tol`).
pub fn integrate_orbit(params: &Params, start: &PhaseState, span: f64, tol: f64) -> Result<Trajectory> {
    check_tolerance(tol)?;
    if !(span.is_finite() && span > 0.0) {
        return Err(Error::Invalid(format!("span must be positive, got {span}")));
    }
    let pressure = pressure_hamiltonian(params, start)?;
    let mut ode = stepper(params, start, tol)?;
    let mut samples = vec![(0.0, *start)];
    let mut segments = Vec::new();
    while ode.t() < span {
        let seg = ode.step(span).map_err(map_step_error)?;
        samples.push((seg.t1(), PhaseState::new(seg.y1[0], seg.y1[1])));
        segments.push(seg);
    }
    if let Some(last) = samples.last_mut() {
        last.0 = span;
    }
    Ok(Trajectory { params: *params, samples, pressure, segments })
}

/// Pointwise pressure implied by a sampled profile,
/// `P(θ) = [-(λ-1)ψ'² + λ²ψ² + λψ''ψ] / (2(λ-1))`, with `ψ''` obtained by
/// high-order differencing of the `ψ'` samples.
pub fn pressure_residual_profile(lambda: f64, profile: &SolutionProfile) -> Result<Vec<f64>> {
    if lambda == 1.0 {
        return Err(Error::domain("pressure relation is undefined at lambda = 1"));
    }
    let psi_pp = profile.second_derivative()?;
    Ok(profile
        .psi
        .iter()
        .zip(&profile.psi_prime)
        .zip(&psi_pp)
        .map(|((&p, &dp), &ddp)| {
            (-(lambda - 1.0) * dp * dp + lambda * lambda * p * p + lambda * ddp * p) / (2.0 * (lambda - 1.0))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn p(l: f64, b: f64) -> Params {
        Params::new(l, b).unwrap()
    }

    #[test]
    fn params_reject_excluded_exponents() {
        assert!(Params::new(1.0, 1.0).is_err());
        assert!(Params::new(0.0, 1.0).is_err());
        assert!(Params::new(-2.0, 1.0).is_err());
        assert!(Params::new(2.0, f64::NAN).is_err());
    }

    #[test]
    fn field_at_linear_center_vanishes() {
        let (a, b) = vector_field(&p(2.0, 1.0), &PhaseState::new(0.125, 0.0)).unwrap();
        assert_eq!((a, b), (0.0, 0.0));
    }

    #[test]
    fn field_direct_evaluation() {
        let (a, b) = vector_field(&p(2.0, 1.0), &PhaseState::new(0.25, 0.1)).unwrap();
        assert_eq!(a, 0.1);
        assert_relative_eq!(b, -0.5, max_relative = 1e-15);
    }

    #[test]
    fn field_rejects_nonpositive_x_for_fractional_power() {
        assert!(matches!(vector_field(&p(3.0, 1.0), &PhaseState::new(-0.1, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(vector_field(&p(1.5, 1.0), &PhaseState::new(0.0, 0.0)), Err(Error::Domain(_))));
        // integer exponent -3 at λ = 1/2 is fine for negative x
        assert!(vector_field(&p(0.5, -1.0), &PhaseState::new(-1.0, 0.0)).is_ok());
    }

    #[test]
    fn pressure_examples() {
        assert_relative_eq!(pressure_hamiltonian(&p(2.0, 1.0), &PhaseState::new(0.125, 0.0)).unwrap(), 1.0 / 32.0);
        assert_relative_eq!(
            pressure_hamiltonian(&p(2.0, 1.0), &PhaseState::new(3.0 / 16.0, 0.0)).unwrap(),
            3.0 / 128.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            pressure_hamiltonian(&p(0.5, -1.0), &PhaseState::new(2f64.sqrt(), 0.0)).unwrap(),
            -0.5,
            max_relative = 1e-15
        );
    }

    #[test]
    fn bernoulli_examples() {
        assert_relative_eq!(bernoulli(2.0, 1.0 / 32.0, &PhaseState::new(0.125, 0.0)).unwrap(), 1.0);
        assert_relative_eq!(bernoulli(0.5, -0.5, &PhaseState::new(2f64.sqrt(), 0.0)).unwrap(), -1.0, max_relative = 1e-15);
        assert_relative_eq!(bernoulli(2.0, 3.0 / 128.0, &PhaseState::new(3.0 / 16.0, 0.0)).unwrap(), 1.0, max_relative = 1e-15);
        assert!(bernoulli(2.0, 0.0, &PhaseState::new(0.0, 1.0)).is_err());
    }

    #[test]
    fn center_examples() {
        let c = elliptic_center(&p(2.0, 1.0)).unwrap();
        assert_eq!(c.state, PhaseState::new(0.125, 0.0));
        assert_eq!(c.extremal_pressure, 1.0 / 32.0);

        let c = elliptic_center(&p(0.5, -1.0)).unwrap();
        assert_relative_eq!(c.state.x, 2f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(c.extremal_pressure, -0.5, max_relative = 1e-13);

        let c = elliptic_center(&p(5.0, 1.0)).unwrap();
        assert_relative_eq!(c.state.x, (4.0f64 / 125.0).powf(2.5), max_relative = 1e-13);
        assert_relative_eq!(c.extremal_pressure, 0.1 * (4.0f64 / 125.0).powi(4), max_relative = 1e-12);
        assert_relative_eq!(c.extremal_pressure, 1.048576e-7, max_relative = 1e-12);

        let (a, b) = vector_field(&p(5.0, 1.0), &c.state).unwrap();
        assert_eq!(a, 0.0);
        assert!(b.abs() < 1e-18);
    }

    #[test]
    fn linear_route_agrees_with_generic_center() {
        for b in [0.5, 1.0, 3.0] {
            let params = p(2.0, b);
            assert_relative_eq!(locate_center(&params).unwrap(), b / 8.0, max_relative = 1e-14);
        }
    }

    #[test]
    fn center_requires_elliptic_region() {
        assert!(elliptic_center(&p(0.5, 1.0)).is_err());
        assert!(elliptic_center(&p(3.0, -1.0)).is_err());
        assert!(extremal_pressure_closed_form(&p(3.0, -1.0)).is_err());
    }

    #[test]
    fn linearized_frequency_matches_two_lambda() {
        for lam in [0.3, 0.5, 0.8, 1.2, 2.0, 5.0, 12.5] {
            let b = if lam > 1.0 { 1.0 } else { -1.0 };
            let params = p(lam, b);
            let xc = elliptic_center(&params).unwrap().state.x;
            let h = 1e-5 * xc;
            let f = |x: f64| vector_field(&params, &PhaseState::new(x, 0.0)).unwrap().1;
            let dfdx = (f(xc + h) - f(xc - h)) / (2.0 * h);
            assert_relative_eq!(-dfdx, 2.0 * lam, max_relative = 1e-7);
        }
    }

    #[test]
    fn scaling_examples() {
        let params = p(2.0, 1.0);
        let s = PhaseState::new(0.125, 0.0);
        let (sp, ss, sp_p) = scale_solution(1.0, &params, &s, 1.0 / 32.0).unwrap();
        assert_eq!((sp, ss, sp_p), (params, s, 1.0 / 32.0));

        let (sp, ss, pp) = scale_solution(2.0, &params, &s, 1.0 / 32.0).unwrap();
        assert_eq!(sp.bernoulli(), 2.0);
        assert_eq!(ss, PhaseState::new(0.25, 0.0));
        assert_eq!(pp, 1.0 / 8.0);
        assert_eq!(elliptic_center(&sp).unwrap().state, ss);
        assert!(scale_solution(0.0, &params, &s, 0.0).is_err());
    }

    #[test]
    fn linear_orbit_returns_after_one_period() {
        let params = p(2.0, 1.0);
        let start = PhaseState::new(3.0 / 16.0, 0.0);
        let traj = integrate_orbit(&params, &start, std::f64::consts::PI, 1e-12).unwrap();
        let end = traj.end();
        assert!((end.x - start.x).abs() < 1e-9 && end.y.abs() < 1e-9, "{end:?}");
        // closed form x = 1/8 + (1/16) cos 2θ at an interior point
        let mid = traj.state_at(0.7).unwrap();
        assert!((mid.x - (0.125 + (1.4f64).cos() / 16.0)).abs() < 1e-10);
    }

    #[test]
    fn center_trajectory_is_constant() {
        let params = p(2.0, 1.0);
        let start = PhaseState::new(0.125, 0.0);
        let traj = integrate_orbit(&params, &start, 10.0, 1e-10).unwrap();
        assert!(traj.samples.iter().all(|(_, s)| *s == start));
    }

    #[test]
    fn integration_rejects_bad_arguments() {
        let params = p(2.0, 1.0);
        let s = PhaseState::new(0.2, 0.0);
        assert!(integrate_orbit(&params, &s, -1.0, 1e-10).is_err());
        assert!(integrate_orbit(&params, &s, 1.0, 1e-3).is_err());
        assert!(integrate_orbit(&params, &PhaseState::new(-0.2, 0.0), 1.0, 1e-10).is_ok());
        assert!(integrate_orbit(&p(3.0, 1.0), &PhaseState::new(-0.2, 0.0), 1.0, 1e-10).is_err());
    }

    #[test]
    fn escaping_orbit_hits_singular_corner() {
        // λ = 1.5, B = 1: levels with P < 0 run into x = 0 where x^(-1/3) blows up
        let params = p(1.5, 1.0);
        let start = PhaseState::new(0.05, -1.0);
        let err = integrate_orbit(&params, &start, 5.0, 1e-10).unwrap_err();
        assert!(matches!(err, Error::Domain(_) | Error::ToleranceNotMet(_)), "{err}");
    }

    #[test]
    fn reversibility_of_the_flow() {
        let params = p(5.0, 1.0);
        let xc = elliptic_center(&params).unwrap().state.x;
        let start = PhaseState::new(1.3 * xc, 0.4 * xc);
        let t = 0.8;
        let fwd = integrate_orbit(&params, &start, t, 1e-12).unwrap().end();
        let back = integrate_orbit(&params, &PhaseState::new(fwd.x, -fwd.y), t, 1e-12).unwrap().end();
        assert!((back.x - start.x).abs() < 1e-10 * xc);
        assert!((back.y + start.y).abs() < 1e-10 * xc);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bernoulli_inverts_pressure(lam in 0.05f64..15.0, b in -3.0f64..3.0, x in 0.01f64..4.0, y in -2.0f64..2.0) {
            prop_assume!((lam - 1.0).abs() > 1e-3 && b.abs() > 1e-3);
            let params = p(lam, b);
            let s = PhaseState::new(x, y);
            let pr = pressure_hamiltonian(&params, &s).unwrap();
            let back = bernoulli(lam, pr, &s).unwrap();
            // relative to the magnitude of the terms that cancel
            let scale = (2.0 * pr.abs() + lam * lam * x * x + y * y) * x.powf(2.0 / lam - 2.0);
            prop_assert!((back - b).abs() <= 1e-12 * scale.max(b.abs()));
        }

        #[test]
        fn field_commutes_with_scaling(lam in 0.1f64..10.0, x in 0.05f64..3.0, y in -1.0f64..1.0, ci in 0usize..3) {
            prop_assume!((lam - 1.0).abs() > 1e-3);
            let c = [0.5, 2.0, 10.0][ci];
            let params = p(lam, if lam > 1.0 { 1.0 } else { -1.0 });
            let s = PhaseState::new(x, y);
            let pr = pressure_hamiltonian(&params, &s).unwrap();
            let (sp, ss, spr) = scale_solution(c, &params, &s, pr).unwrap();
            let (a0, b0) = vector_field(&params, &s).unwrap();
            let (a1, b1) = vector_field(&sp, &ss).unwrap();
            prop_assert!((a1 - c * a0).abs() <= 1e-12 * (c * a0).abs().max(1e-300));
            let mag = lam * lam * c * x + c * b0.abs();
            prop_assert!((b1 - c * b0).abs() <= 1e-12 * mag);
            let direct = pressure_hamiltonian(&sp, &ss).unwrap();
            prop_assert!((direct - spr).abs() <= 1e-12 * (c * c) * (lam * lam * x * x + y * y + pr.abs()));
        }

        #[test]
        fn centers_match_closed_form(lam in 0.02f64..20.0) {
            prop_assume!((lam - 1.0).abs() > 1e-3);
            let params = p(lam, if lam > 1.0 { 1.0 } else { -1.0 });
            let c = elliptic_center(&params).unwrap();
            let closed = extremal_pressure_closed_form(&params).unwrap();
            prop_assert!((c.extremal_pressure - closed).abs() <= 1e-12 * closed.abs());
        }
    }
}
