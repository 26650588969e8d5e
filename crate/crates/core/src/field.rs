//! Velocity and pressure fields of a homogeneous solution on a polar grid,
//! and discrete residuals of the steady Euler equations.
//!
//! With `Ψ = r^λ ψ(θ)` and `u = ∇⊥Ψ = (∂_y Ψ, -∂_x Ψ)`:
//!
//! ```text
//! u_r = r^(λ-1) ψ'(θ),   u_θ = -λ r^(λ-1) ψ(θ),   p = r^(2(λ-1)) P.
//! ```
//!
//! [`Orientation::Flipped`] selects the opposite convention and negates `u`.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::SolutionProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    #[default]
    Standard,
    Flipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub nr: usize,
    pub ntheta: usize,
    pub orientation: Orientation,
}

impl GridSpec {
    pub fn new(r_min: f64, r_max: f64, nr: usize, ntheta: usize) -> Self {
        GridSpec { r_min, r_max, nr, ntheta, orientation: Orientation::Standard }
    }

    fn validate(&self) -> Result<()> {
        if !(self.r_min.is_finite() && self.r_min > 0.0) {
            return Err(Error::Invalid(format!("r_min must be positive (origin excluded), got {}", self.r_min)));
        }
        if !(self.r_max.is_finite() && self.r_max > self.r_min) {
            return Err(Error::Invalid(format!("r_max must exceed r_min, got {}", self.r_max)));
        }
        if self.nr < 3 || self.ntheta < 3 {
            return Err(Error::Invalid(format!("grid needs nr, ntheta >= 3, got {} x {}", self.nr, self.ntheta)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldValue {
    pub u_r: f64,
    pub u_theta: f64,
    pub p: f64,
}

/// Field values on `r_i = r_min + i Δr` (`i < nr`, endpoints included) by
/// `θ_j = 2πj/ntheta` (periodic), stored row-major in `r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub nr: usize,
    pub ntheta: usize,
    pub values: Vec<FieldValue>,
}

impl FieldGrid {
    pub fn dr(&self) -> f64 {
        (self.r_max - self.r_min) / (self.nr - 1) as f64
    }

    pub fn dtheta(&self) -> f64 {
        TAU / self.ntheta as f64
    }

    pub fn r(&self, i: usize) -> f64 {
        self.r_min + i as f64 * self.dr()
    }

    pub fn theta(&self, j: usize) -> f64 {
        j as f64 * self.dtheta()
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldValue {
        &self.values[i * self.ntheta + j]
    }
}

/// Builds the field of `profile` on the grid described by `spec`.
pub fn velocity_field(profile: &SolutionProfile, spec: &GridSpec) -> Result<FieldGrid> {
    velocity_field_with_pressure(profile, spec, profile.pressure)
}

/// As [`velocity_field`], with the pressure constant replaced by `pressure`.
pub fn velocity_field_with_pressure(profile: &SolutionProfile, spec: &GridSpec, pressure: f64) -> Result<FieldGrid> {
    spec.validate()?;
    profile.validate()?;
    let lam = profile.lambda;
    let sign = match spec.orientation {
        Orientation::Standard => 1.0,
        Orientation::Flipped => -1.0,
    };
    let angular: Vec<(f64, f64)> = (0..spec.ntheta)
        .map(|j| profile.sample_at(TAU * j as f64 / spec.ntheta as f64))
        .collect::<Result<_>>()?;
    let dr = (spec.r_max - spec.r_min) / (spec.nr - 1) as f64;
    let mut values = Vec::with_capacity(spec.nr * spec.ntheta);
    for i in 0..spec.nr {
        let r = spec.r_min + i as f64 * dr;
        let rv = r.powf(lam - 1.0);
        let rp = r.powf(2.0 * (lam - 1.0));
        for &(psi, dpsi) in &angular {
            values.push(FieldValue { u_r: sign * rv * dpsi, u_theta: -sign * lam * rv * psi, p: rp * pressure });
        }
    }
    Ok(FieldGrid { r_min: spec.r_min, r_max: spec.r_max, nr: spec.nr, ntheta: spec.ntheta, values })
}

/// Max-norm residuals of the steady Euler equations, each divided by the
/// largest magnitude of the individual terms entering it (so both are
/// dimensionless). A norm whose terms all vanish is reported unscaled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub div_norm: f64,
    pub momentum_norm: f64,
}

/// Second-order centered differences at interior radii, periodic in θ:
///
/// ```text
/// div   = (1/r) ∂_r(r u_r) + (1/r) ∂_θ u_θ
/// mom_r = u_r ∂_r u_r + (u_θ/r) ∂_θ u_r - u_θ²/r + ∂_r p
/// mom_θ = u_r ∂_r u_θ + (u_θ/r) ∂_θ u_θ + u_r u_θ/r + (1/r) ∂_θ p
/// ```
pub fn euler_residual(field: &FieldGrid, _lambda: f64) -> Result<Residual> {
    if field.nr < 16 || field.ntheta < 16 {
        return Err(Error::Invalid(format!("residual needs nr, ntheta >= 16, got {} x {}", field.nr, field.ntheta)));
    }
    if field.values.len() != field.nr * field.ntheta {
        return Err(Error::Invalid("field grid values do not match its dimensions".into()));
    }
    let dr = field.dr();
    let dt = field.dtheta();
    let nt = field.ntheta;
    let (mut div_max, mut div_scale) = (0.0f64, 0.0f64);
    let (mut mom_max, mut mom_scale) = (0.0f64, 0.0f64);
    for i in 1..field.nr - 1 {
        let r = field.r(i);
        let (rm, rp) = (field.r(i - 1), field.r(i + 1));
        for j in 0..nt {
            let c = field.at(i, j);
            let (im, ip) = (field.at(i - 1, j), field.at(i + 1, j));
            let (jm, jp) = (field.at(i, (j + nt - 1) % nt), field.at(i, (j + 1) % nt));
            let dr_of = |f: fn(&FieldValue) -> f64| (f(ip) - f(im)) / (2.0 * dr);
            let dt_of = |f: fn(&FieldValue) -> f64| (f(jp) - f(jm)) / (2.0 * dt);

            let div_a = (rp * ip.u_r - rm * im.u_r) / (2.0 * dr) / r;
            let div_b = dt_of(|v| v.u_theta) / r;
            div_max = div_max.max((div_a + div_b).abs());
            div_scale = div_scale.max(div_a.abs()).max(div_b.abs());

            let terms_r = [
                c.u_r * dr_of(|v| v.u_r),
                c.u_theta / r * dt_of(|v| v.u_r),
                -c.u_theta * c.u_theta / r,
                dr_of(|v| v.p),
            ];
            let terms_t = [
                c.u_r * dr_of(|v| v.u_theta),
                c.u_theta / r * dt_of(|v| v.u_theta),
                c.u_r * c.u_theta / r,
                dt_of(|v| v.p) / r,
            ];
            for terms in [terms_r, terms_t] {
                mom_max = mom_max.max(terms.iter().sum::<f64>().abs());
                mom_scale = terms.iter().fold(mom_scale, |m, t| m.max(t.abs()));
            }
        }
    }
    let rel = |v: f64, s: f64| if s > 0.0 { v / s } else { v };
    Ok(Residual { div_norm: rel(div_max, div_scale), momentum_norm: rel(mom_max, mom_scale) })
}

/// Momentum residual of the field built with each trial pressure constant.
pub fn pressure_sweep(profile: &SolutionProfile, spec: &GridSpec, pressures: &[f64]) -> Result<Vec<(f64, Residual)>> {
    pressures
        .par_iter()
        .map(|&p| Ok((p, euler_residual(&velocity_field_with_pressure(profile, spec, p)?, profile.lambda)?)))
        .collect()
}
