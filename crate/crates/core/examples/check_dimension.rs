// Runs every criterion on single dimensions and prints the witnesses.

use quasicross::criteria::{evaluate_all, Existence, Status};
use quasicross::splitting::QuasiCrossShape;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // Nothing is known about smaller dimensions here except the trivial tiling.
    let oracle = |n: u64| Some(if n == 1 { Existence::Tiles } else { Existence::Unknown });

    for (kp, km, n) in [(3, 1, 7), (3, 1, 11), (3, 2, 13), (5, 1, 5)] {
        let shape = QuasiCrossShape::new(kp, km, n)?;
        println!("{shape}, q = {}", shape.q());
        for outcome in evaluate_all(&shape, &oracle)? {
            if outcome.status == Status::Inapplicable {
                continue;
            }
            let witness = outcome.witness.map(|w| w.to_string()).unwrap_or_default();
            println!("  {:<16} {:<13} {witness}", outcome.criterion, outcome.status.to_string());
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
