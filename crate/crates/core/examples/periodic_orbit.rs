// Locate the level with T = 2π/3 at λ = 5 and rebuild ψ(θ).

use std::f64::consts::TAU;

use homogeneous_euler::classify::{self, ProfileOptions, Sign};
use homogeneous_euler::Result;

pub fn run() -> Result<()> {
    let orbit = classify::find_periodic(5.0, Sign::Plus, 3, 1e-10)?;
    println!(
        "P = {:.12e}, T = {:.15} (2pi/3 = {:.15})",
        orbit.pressure,
        orbit.period,
        TAU / 3.0
    );

    let profile = classify::reconstruct_profile(&orbit.params, orbit.pressure, 3, 512, &ProfileOptions::default())?;
    println!(
        "profile: {} samples, {} maxima, closure defect {:.1e}, type {:?}",
        profile.psi.len(),
        profile.count_maxima(),
        profile.closure_defect(),
        profile.type_tag
    );
    for k in (0..=512).step_by(64) {
        println!("  theta = {:.4}  psi = {:.6e}", profile.theta[k], profile.psi[k]);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
