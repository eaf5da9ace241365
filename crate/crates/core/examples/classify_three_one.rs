// Classifies (3,1) quasi-cross tilings up to n = 250 against the shipped registry.

use quasicross::classify::{classify_range, load_registry, summarize, ClassifyOptions};
use quasicross::cli::data_path;
use quasicross::criteria::CriterionId;
use quasicross::splitting::Arms;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let registry = load_registry(data_path("registry-3-1.json"))?;
    let c = classify_range(Arms::new(3, 1)?, 250, Some(&registry), &[], &ClassifyOptions::default())?;
    let s = summarize(&c);

    println!("tiles {}, no tiling {}, unknown {}", s.tiles, s.no_tiling, s.unknown);
    println!("unknown: {:?}", c.unknown());
    println!("vandermonde fires {} times", s.firing_count(CriterionId::Vandermonde));
    for line in s.residue_lines.iter().filter(|l| l.modulus == 3) {
        println!("n = {} mod 3: {}/{} ruled out", line.residue, line.ruled_out, line.total);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
