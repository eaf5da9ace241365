// Exhaustive splitter search for small dimensions of two shapes.

use quasicross::search::{Budget, SearchStatus, SplitterSearch};
use quasicross::splitting::Arms;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (arms, n_max) in [(Arms::new(3, 1)?, 8), (Arms::new(3, 2)?, 6)] {
        println!("shape {arms}");
        for n in 1..=n_max {
            let shape = arms.at(n)?;
            let m = shape.multiplier_set();
            let search = SplitterSearch::new(&m).budget(Budget::nodes(10_000_000));
            let found = match search.find().status {
                SearchStatus::Found(s) => format!("{:?}", s.splitters()),
                SearchStatus::Exhausted(_) => "none".to_string(),
                SearchStatus::TimedOut(limit) => format!("undecided ({limit:?})"),
            };
            let count = search.count();
            println!("  n = {n:>2}  q = {:>3}  count = {:>3}  first = {found}", shape.q(), count.count);
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
