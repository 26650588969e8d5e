// Velocity and pressure of the λ = 5, n = 3 flow with a grid convergence check.

use homogeneous_euler::classify::{self, ProfileOptions, Sign};
use homogeneous_euler::field::{self, GridSpec, Orientation};
use homogeneous_euler::Result;

pub fn run() -> Result<()> {
    let orbit = classify::find_periodic(5.0, Sign::Plus, 3, 1e-10)?;
    let profile = classify::reconstruct_profile(&orbit.params, orbit.pressure, 3, 2048, &ProfileOptions::default())?;

    let grid = field::velocity_field(&profile, &GridSpec::new(0.5, 1.5, 16, 64))?;
    let v = grid.at(15, 0);
    println!("at r = 1.5, theta = 0: u_r = {:.4e}, u_theta = {:.4e}, p = {:.4e}", v.u_r, v.u_theta, v.p);

    let mut previous: Option<field::Residual> = None;
    for nr in [16, 32, 64, 128] {
        let grid = field::velocity_field(&profile, &GridSpec::new(0.5, 1.5, nr, 4 * nr))?;
        let r = field::euler_residual(&grid, 5.0)?;
        let ratio = previous.map_or(String::new(), |p| format!("  ratio {:.2}", p.momentum_norm / r.momentum_norm));
        println!("{nr:>4} x {:<4} div {:.3e}  momentum {:.3e}{ratio}", 4 * nr, r.div_norm, r.momentum_norm);
        previous = Some(r);
    }

    let mut spec = GridSpec::new(0.5, 1.5, 16, 64);
    spec.orientation = Orientation::Flipped;
    let flipped = field::velocity_field(&profile, &spec)?;
    println!("flipped orientation: u_theta = {:.4e}", flipped.at(15, 0).u_theta);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
