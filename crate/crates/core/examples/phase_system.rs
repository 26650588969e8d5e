// The phase plane of `Ψ = r^λ ψ(θ)`: center, invariant, one integrated loop.

use homogeneous_euler::dynamics::{self, Params, PhaseState};
use homogeneous_euler::period;
use homogeneous_euler::Result;

pub fn run() -> Result<()> {
    let params = Params::new(5.0, 1.0)?;
    let center = dynamics::elliptic_center(&params)?;
    println!("lambda = 5, B = 1: center x_c = {:.12}, P_max = {:.6e}", center.state.x, center.extremal_pressure);

    let pressure = 0.5 * center.extremal_pressure;
    let (x_minus, x_plus) = period::turning_points(&params, pressure)?;
    println!("level P = P_max/2 runs between x = {x_minus:.6e} and {x_plus:.6e}");

    let start = PhaseState::new(x_plus, 0.0);
    let (dx, dy) = dynamics::vector_field(&params, &start)?;
    println!("field at the outer turning point: ({dx:.3e}, {dy:.3e})");

    let traj = dynamics::integrate_orbit(&params, &start, 6.0, 1e-10)?;
    println!(
        "{} steps over theta in [0, 6], pressure drift {:.2e}",
        traj.samples.len(),
        traj.max_pressure_drift()?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
