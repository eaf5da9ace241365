// Checks a splitting by hand, breaks it, and derives the tiling lattice.

use quasicross::splitting::{lattice_basis, QuasiCrossShape, Splitting};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let shape = QuasiCrossShape::new(3, 1, 6)?;
    println!("shape {shape}, q = {}, M = {:?}", shape.q(), shape.multiplier_set().values());

    let good = Splitting::for_shape(&shape, vec![1, 5, 6, 11, 16, 21])?;
    good.verify()?;
    println!("S = {:?} splits Z_{}", good.splitters(), good.q());

    let bad = Splitting::for_shape(&shape, vec![1, 5, 6, 11, 16, 22])?;
    match bad.verify() {
        Ok(()) => return Err("mutated splitter set unexpectedly verified".into()),
        Err(defect) => println!("S = {:?} fails: {defect}", bad.splitters()),
    }

    let basis = lattice_basis(&good)?;
    println!("lattice basis (rows), determinant {}:", basis.diagonal().iter().product::<i64>());
    for row in basis.rows() {
        println!("  {row:?}");
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
