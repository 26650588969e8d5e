// How many elliptic 2π-periodic solutions exist, by formula and by scan.

use homogeneous_euler::classify::{self, Mode, ScanOptions, Sign};
use homogeneous_euler::Result;

pub fn run() -> Result<()> {
    println!("{:>6}  {:<10} {:<10}", "lambda", "table", "scan");
    for lambda in [1.2, 2.0, 3.0, 4.5, 5.0, 8.0, 12.5, 18.0] {
        let table = classify::count_elliptic(lambda, Sign::Plus, Mode::Table)?;
        let scan = classify::count_elliptic(lambda, Sign::Plus, Mode::Scan)?;
        println!("{lambda:>6}  {:<10} {:<10}", format!("{table:?}"), format!("{scan:?}"));
    }

    let report = classify::scan_classification(18.0, Sign::Plus, &ScanOptions::default())?;
    for c in &report.crossings {
        println!("lambda = 18: T = 2pi/{} at s = {:.3e}", c.winding, c.s);
    }
    for lambda in [0.3, 0.5, 0.7] {
        println!("lambda = {lambda}, B = -1: {:?}", classify::count_elliptic(lambda, Sign::Minus, Mode::Scan)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
