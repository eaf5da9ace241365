// Classifies (3,2) quasi-cross tilings and checks where the survivors live.

use quasicross::classify::{classify_range, load_registry, render_verdicts, ClassifyOptions, Format};
use quasicross::cli::data_path;
use quasicross::splitting::Arms;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let registry = load_registry(data_path("registry-3-2.json"))?;
    let c = classify_range(Arms::new(3, 2)?, 250, Some(&registry), &[], &ClassifyOptions::default())?;

    let unknown = c.unknown();
    println!("unknown: {unknown:?}");
    let residues: Vec<u64> = unknown.iter().map(|n| n % 36).collect();
    println!("residues mod 36: {residues:?}");

    let first: String = render_verdicts(&c, Format::Text).lines().take(16).collect::<Vec<_>>().join("\n");
    println!("{first}");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
