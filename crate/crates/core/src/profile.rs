//! Sampled angular profiles `θ ↦ (ψ, ψ')`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::stencil;

/// Relative endpoint mismatch below which a profile is treated as exactly
/// periodic for differentiation.
const SEAMLESS: f64 = 1e-12;

/// Relative endpoint mismatch below which samples may be extended
/// periodically beyond `[0, 2π]`.
pub const PERIODIC_EXTENSION_TOL: f64 = 1e-6;

/// Streamline topology of a homogeneous solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TypeTag {
    /// ψ never vanishes: closed streamlines around the origin.
    Elliptic,
    /// ψ vanishes at two or more angles.
    Hyperbolic,
    /// ψ vanishes at exactly one angle.
    Parabolic,
    /// ψ is constant.
    Rotation,
}

/// A profile sampled on the uniform grid `θ_k = 2πk/M`, `k = 0..=M`
/// (both endpoints included).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionProfile {
    pub lambda: f64,
    pub bernoulli: f64,
    pub pressure: f64,
    /// Number of orbit loops over `[0, 2π]`.
    pub winding: u32,
    #[serde(rename = "type")]
    pub type_tag: TypeTag,
    pub theta: Vec<f64>,
    pub psi: Vec<f64>,
    pub psi_prime: Vec<f64>,
}

/// Uniform grid on `[0, 2π]` with `intervals + 1` points.
pub fn uniform_grid(intervals: usize) -> Vec<f64> {
    (0..=intervals).map(|k| TAU * k as f64 / intervals as f64).collect()
}

impl SolutionProfile {
    /// Builds a profile from samples on [`uniform_grid`]; the type tag is
    /// derived from the samples.
    pub fn from_samples(lambda: f64, bernoulli: f64, pressure: f64, winding: u32, psi: Vec<f64>, psi_prime: Vec<f64>) -> Result<Self> {
        if psi.len() != psi_prime.len() || psi.len() < 3 {
            return Err(Error::Invalid("profile needs matching psi/psi_prime arrays with at least 3 samples".into()));
        }
        let theta = uniform_grid(psi.len() - 1);
        let mut p = SolutionProfile {
            lambda,
            bernoulli,
            pressure,
            winding,
            type_tag: TypeTag::Rotation,
            theta,
            psi,
            psi_prime,
        };
        p.type_tag = p.classify();
        Ok(p)
    }

    /// Checks array lengths and that `theta` is the uniform grid on `[0, 2π]`.
    pub fn validate(&self) -> Result<()> {
        let n = self.theta.len();
        if n < 3 || self.psi.len() != n || self.psi_prime.len() != n {
            return Err(Error::Invalid(format!(
                "profile arrays must have equal length >= 3 (theta {}, psi {}, psi_prime {})",
                n,
                self.psi.len(),
                self.psi_prime.len()
            )));
        }
        let h = TAU / (n - 1) as f64;
        for (k, t) in self.theta.iter().enumerate() {
            if (t - k as f64 * h).abs() > 1e-9 {
                return Err(Error::Invalid(format!("theta must be uniform on [0, 2pi]; sample {k} is {t}")));
            }
        }
        if self.psi.iter().chain(&self.psi_prime).any(|v| !v.is_finite()) {
            return Err(Error::Invalid("profile contains non-finite samples".into()));
        }
        Ok(())
    }

    /// Number of grid intervals `M`.
    pub fn intervals(&self) -> usize {
        self.psi.len() - 1
    }

    pub fn spacing(&self) -> f64 {
        TAU / self.intervals() as f64
    }

    pub fn max_abs_psi(&self) -> f64 {
        self.psi.iter().fold(0.0, |m: f64, v| m.max(v.abs()))
    }

    pub fn min_psi(&self) -> f64 {
        self.psi.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `max(|ψ(2π) - ψ(0)|, |ψ'(2π) - ψ'(0)|) / max |ψ|`.
    pub fn closure_defect(&self) -> f64 {
        let m = self.intervals();
        let d = (self.psi[m] - self.psi[0]).abs().max((self.psi_prime[m] - self.psi_prime[0]).abs());
        let scale = self.max_abs_psi();
        if scale == 0.0 {
            d
        } else {
            d / scale
        }
    }

    pub fn is_closed(&self, tol: f64) -> bool {
        self.closure_defect() <= tol
    }

    /// `ψ''` from the `ψ'` samples (periodic stencils when the profile closes
    /// to rounding, one-sided near the ends otherwise).
    pub fn second_derivative(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let h = self.spacing();
        let m = self.intervals();
        if self.is_closed(SEAMLESS) {
            let mut d = stencil::derivative(&self.psi_prime[..m], h, true);
            d.push(d[0]);
            Ok(d)
        } else {
            Ok(stencil::derivative(&self.psi_prime, h, false))
        }
    }

    /// Interpolated `(ψ, ψ')` at any angle. Angles outside `[0, 2π]` need a
    /// profile that closes within [`PERIODIC_EXTENSION_TOL`].
    pub fn sample_at(&self, theta: f64) -> Result<(f64, f64)> {
        let h = self.spacing();
        let m = self.intervals();
        if self.is_closed(PERIODIC_EXTENSION_TOL) {
            let psi = stencil::interpolate(&self.psi[..m], 0.0, h, Some(TAU), theta);
            let dpsi = stencil::interpolate(&self.psi_prime[..m], 0.0, h, Some(TAU), theta);
            return Ok((psi, dpsi));
        }
        if !(-1e-12..=TAU + 1e-12).contains(&theta) {
            return Err(Error::domain(format!(
                "angle {theta} lies outside [0, 2pi] and the profile is not closed (defect {:.3e})",
                self.closure_defect()
            )));
        }
        Ok((
            stencil::interpolate(&self.psi, 0.0, h, None, theta),
            stencil::interpolate(&self.psi_prime, 0.0, h, None, theta),
        ))
    }

    /// Local maxima of ψ on `[0, 2π)`, counted cyclically.
    pub fn count_maxima(&self) -> usize {
        let m = self.intervals();
        let v = &self.psi[..m];
        (0..m)
            .filter(|&i| {
                let prev = v[(i + m - 1) % m];
                let next = v[(i + 1) % m];
                v[i] > prev && v[i] >= next
            })
            .count()
    }

    /// Zeros of ψ over one turn: sign changes between samples plus runs of
    /// samples below `threshold` in magnitude.
    pub fn count_zeros(&self, threshold: f64) -> usize {
        let m = self.intervals();
        let class = |v: f64| -> i8 {
            if v.abs() <= threshold {
                0
            } else if v > 0.0 {
                1
            } else {
                -1
            }
        };
        let classes: Vec<i8> = self.psi[..m].iter().map(|&v| class(v)).collect();
        if classes.iter().all(|&c| c == 0) {
            return 1;
        }
        let mut zeros = 0;
        for i in 0..m {
            let (a, b) = (classes[i], classes[(i + 1) % m]);
            if a != 0 && b == 0 {
                zeros += 1; // entering a zero run
            } else if a * b < 0 {
                zeros += 1;
            }
        }
        zeros
    }

    /// Topology of the profile.
    pub fn classify(&self) -> TypeTag {
        let scale = self.max_abs_psi();
        let m = self.intervals();
        let (lo, hi) = self.psi[..m]
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        if scale > 0.0 && hi - lo <= 1e-12 * scale {
            return TypeTag::Rotation;
        }
        match self.count_zeros(1e-9 * scale) {
            0 => TypeTag::Elliptic,
            1 => TypeTag::Parabolic,
            _ => TypeTag::Hyperbolic,
        }
    }

    /// Shift (in samples) that moves the global maximum of ψ to index 0.
    pub fn argmax(&self) -> usize {
        let m = self.intervals();
        (0..m).fold(0, |best, i| if self.psi[i] > self.psi[best] { i } else { best })
    }

    /// Angle of the global maximum of ψ, refined between grid points by
    /// locating the zero of the interpolated ψ'.
    pub fn peak_angle(&self) -> f64 {
        let k = self.argmax();
        let t = self.theta[k];
        let h = self.spacing();
        let dpsi = |s: f64| self.sample_at(s).map(|v| v.1).unwrap_or(f64::NAN);
        let (a, b) = (dpsi(t - h), dpsi(t + h));
        if a > 0.0 && b < 0.0 {
            if let Ok(root) = crate::numerics::roots::brent(dpsi, t - h, t + h, 1e-15, 100) {
                return root.x;
            }
        }
        t
    }

    /// Sup-norm distance of ψ after aligning both profiles at their maxima.
    /// Both profiles must be closed; the second is interpolated onto the
    /// first's grid.
    pub fn aligned_distance(&self, other: &SolutionProfile) -> Result<f64> {
        let shift_a = self.peak_angle();
        let shift_b = other.peak_angle();
        let m = self.intervals();
        let mut worst: f64 = 0.0;
        for k in 0..m {
            let t = self.theta[k];
            let (a, _) = self.sample_at(t + shift_a)?;
            let (b, _) = other.sample_at(t + shift_b)?;
            worst = worst.max((a - b).abs());
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(f: impl Fn(f64) -> (f64, f64), m: usize) -> SolutionProfile {
        let grid = uniform_grid(m);
        let (psi, dpsi): (Vec<f64>, Vec<f64>) = grid.iter().map(|&t| f(t)).unzip();
        SolutionProfile::from_samples(2.0, 1.0, 0.0, 1, psi, dpsi).unwrap()
    }

    #[test]
    fn classification_examples() {
        assert_eq!(synthetic(|_| (0.125, 0.0), 64).classify(), TypeTag::Rotation);
        let ell = synthetic(|t| (0.125 + (2.0 * t).cos() / 16.0, -(2.0 * t).sin() / 8.0), 256);
        assert_eq!(ell.classify(), TypeTag::Elliptic);
        let hyp = synthetic(|t| ((3.0 * t).sin(), 3.0 * (3.0 * t).cos()), 256);
        assert_eq!(hyp.count_zeros(1e-9), 6);
        assert_eq!(hyp.classify(), TypeTag::Hyperbolic);
        // tangent to zero once
        let par = synthetic(|t| (1.0 - t.cos(), t.sin()), 256);
        assert_eq!(par.classify(), TypeTag::Parabolic);
        let neg = synthetic(|t| (-2.0 - t.cos(), t.sin()), 64);
        assert_eq!(neg.classify(), TypeTag::Elliptic);
    }

    #[test]
    fn maxima_and_closure() {
        let p = synthetic(|t| (1.0 + 0.3 * (3.0 * t).cos(), -0.9 * (3.0 * t).sin()), 300);
        assert_eq!(p.count_maxima(), 3);
        assert!(p.closure_defect() < 1e-15);
        let open = synthetic(|t| (1.0 + 0.1 * t, 0.1), 100);
        assert!(open.closure_defect() > 0.1);
        assert!(open.sample_at(7.0).is_err());
        assert!(open.sample_at(3.0).is_ok());
    }

    #[test]
    fn validation_catches_malformed_profiles() {
        let mut p = synthetic(|t| (1.0 + t.cos(), -t.sin()), 32);
        assert!(p.validate().is_ok());
        p.theta[3] += 0.01;
        assert!(p.validate().is_err());
        p.theta.pop();
        assert!(p.validate().is_err());
    }

    #[test]
    fn alignment_removes_phase_shift() {
        let a = synthetic(|t| (2.0 + (2.0 * t).cos(), -2.0 * (2.0 * t).sin()), 256);
        let b = synthetic(|t| (2.0 + (2.0 * t + 0.3).cos(), -2.0 * (2.0 * t + 0.3).sin()), 256);
        assert!(a.aligned_distance(&b).unwrap() < 1e-10);
        let c = synthetic(|t| (2.5 + (2.0 * t).cos(), -2.0 * (2.0 * t).sin()), 256);
        assert!((a.aligned_distance(&c).unwrap() - 0.5).abs() < 1e-10);
    }
}
