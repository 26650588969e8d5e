// Solution counts of det D²u = |x|^α through λ = 2 + α/2.

use homogeneous_euler::classify;
use homogeneous_euler::Result;

pub fn run() -> Result<()> {
    for alpha in [-1.0, 0.0, 5.0, 6.0, 12.0, 21.0, 40.0] {
        let (lambda, c) = classify::ma_count(alpha)?;
        let count = c.count().map_or("infinitely many".to_string(), |n| n.to_string());
        println!("alpha = {alpha:>5}: lambda = {lambda:>5}, {count} non-radial solutions {:?}", c);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
