// Finds splittings, stores them as certificates and feeds them back into a classification.

use quasicross::classify::{
    classify_range, load_certificates, store_certificate, ClassifyOptions, TilingSource, VerdictStatus,
};
use quasicross::search::{find_splitting, Budget};
use quasicross::splitting::{Arms, Certificate};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let path = dir.path().join("certificates.jsonl");
    let arms = Arms::new(3, 1)?;

    for n in [1, 6, 31] {
        let shape = arms.at(n)?;
        let outcome = find_splitting(&shape.multiplier_set(), Budget::nodes(50_000_000));
        let Some(splitting) = outcome.splitting() else {
            println!("{shape}: no splitting within budget");
            continue;
        };
        let cert = Certificate::from_splitting(arms, splitting);
        let added = store_certificate(&path, &cert)?;
        println!("{shape}: {} nodes, stored = {added}", outcome.stats.nodes);
    }
    print!("{}", std::fs::read_to_string(&path)?);

    let certificates = load_certificates(&path)?;
    let c = classify_range(arms, 40, None, &certificates, &ClassifyOptions::default())?;
    for v in c.verdicts() {
        if v.status == VerdictStatus::Tiles(TilingSource::Certificate) {
            println!("n = {} tiles by certificate", v.n);
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
