// T(s) across the elliptic range by both methods, against its limits.

use homogeneous_euler::period::{self, Level, Method, Spacing};
use homogeneous_euler::{Params, Result};

pub fn run() -> Result<()> {
    for (lambda, b) in [(1.5, 1.0), (2.0, 1.0), (5.0, 1.0), (0.3, -1.0)] {
        let params = Params::new(lambda, b)?;
        let (center, boundary) = period::period_limits(&params)?;
        println!("lambda = {lambda}, B = {b}: T -> {center:.6} at the center, {boundary:.6} at the boundary");
        for s in [0.01, 0.25, 0.5, 0.75, 0.99] {
            let quad = period::period(&params, Level::Fraction(s), Method::Quadrature, 1e-10)?;
            let flight = period::period(&params, Level::Fraction(s), Method::Flight, 1e-10)?;
            println!("  s = {s:<4}  T = {quad:.10}  (flight differs by {:.1e})", (quad - flight).abs());
        }
    }

    let table = period::period_table(&Params::new(12.5, 1.0)?, 9, 1e-3, 1.0 - 1e-3, Spacing::Logit, 1e-10)?;
    println!("lambda = 12.5 table:");
    for row in &table.rows {
        println!("  s = {:.6}  P = {:.4e}  T = {:.8}", row.s, row.pressure, row.period);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
