// The conjugate map λ → 1/λ applied to a reconstructed profile.

use homogeneous_euler::classify::{self, ProfileOptions, Sign};
use homogeneous_euler::dynamics;
use homogeneous_euler::period::{self, Level, Method};
use homogeneous_euler::profile::{uniform_grid, SolutionProfile};
use homogeneous_euler::{Params, Result};

pub fn run() -> Result<()> {
    let orbit = classify::find_periodic(5.0, Sign::Plus, 3, 1e-10)?;
    let profile = classify::reconstruct_profile(&orbit.params, orbit.pressure, 3, 2048, &ProfileOptions::default())?;
    let dual = classify::conjugate_dual(&profile)?;
    println!("dual: lambda = {}, B = {:.6e}, P = {:.12e}", dual.lambda, dual.bernoulli, dual.pressure);

    let residual = dynamics::pressure_residual_profile(dual.lambda, &dual)?;
    let spread = residual.iter().fold(f64::NEG_INFINITY, |a, &v| a.max(v)) - residual.iter().fold(f64::INFINITY, |a, &v| a.min(v));
    println!("pressure along the dual profile varies by {spread:.1e}");

    let t = period::period(&Params::new(dual.lambda, dual.bernoulli)?, Level::Pressure(dual.pressure), Method::Quadrature, 1e-11)?;
    println!("dual period {t:.12} = lambda * T = {:.12}", 5.0 * orbit.period);

    // ψ(θ/5) covers a fifth of the source loop, so this dual is not 2π-periodic
    // and cannot be mapped back; a λ = 2 profile closes under both maps.
    let grid = uniform_grid(1024);
    let psi = grid.iter().map(|t| 0.125 + (2.0 * t).cos() / 16.0).collect();
    let dpsi = grid.iter().map(|t| -(2.0 * t).sin() / 8.0).collect();
    let source = SolutionProfile::from_samples(2.0, 1.0, 3.0 / 128.0, 2, psi, dpsi)?;
    let back = classify::conjugate_dual(&classify::conjugate_dual(&source)?)?;
    println!("lambda = 2: dual of the dual matches the original to {:.1e}", back.aligned_distance(&source)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
