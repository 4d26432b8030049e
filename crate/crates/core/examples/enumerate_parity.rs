//! Lists every positively dependent colorful set of small pair
//! configurations and compares the count with the fully-labeled faces of the
//! complement complex. Both are always even.

use colorful::combinatorics::ComplementComplex;
use colorful::generators::random_pairs;
use colorful::geometry::{enumerate_pdcs, DEFAULT_ENUMERATION_BUDGET};

fn main() -> colorful::Result<()> {
    let budget = DEFAULT_ENUMERATION_BUDGET;
    for d in 1..=4 {
        for seed in 0..3 {
            let cfg = random_pairs(d, 20, seed)?;
            let found = enumerate_pdcs(&cfg, budget)?;
            let complex = ComplementComplex::new(cfg)?;
            let census = complex.census(budget)?;
            assert_eq!(census.count, found.len());
            println!("d={d} seed={seed}: {} solutions, census {:?}", found.len(), census);
        }
    }

    let complex = ComplementComplex::new(random_pairs(2, 20, 0)?)?;
    println!(
        "\nd=2 complex: dimension {:?}, downward closed {}, {} faces",
        complex.dimension(budget)?,
        complex.is_downward_closed(budget)?,
        complex.faces(budget)?.len()
    );
    Ok(())
}
