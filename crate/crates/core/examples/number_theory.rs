// Factorization, residue symbols and quartic classes for a few group orders.

use quasicross::numtheory::{factorize, legendre, primorial, QuarticCharacter};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for m in [1001u64, 3_825_123_056_546_413_051, 600_851_475_143] {
        println!("{m} = {}", factorize(m));
    }

    let q = 13;
    let symbols: Vec<i8> = (1..q as i64).map(|a| legendre(a, q)).collect::<Result<_, _>>()?;
    println!("quadratic characters mod {q}: {symbols:?}");

    let chi = QuarticCharacter::new(29)?;
    println!("i = {} is a square root of -1 mod 29", chi.root_of_minus_one());
    for a in [-1i64, 1, 2, 3] {
        println!("  class of {a:>2}: i^{}", chi.class(a)?.index());
    }

    println!("7# = {}", primorial(7)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
