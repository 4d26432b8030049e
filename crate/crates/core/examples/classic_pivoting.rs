//! Runs the classic separating-facet pivoting next to the simplex-like
//! method on the same instances.

use colorful::generators::{generate, GeneratorKind, GeneratorSpec};
use colorful::pivot::{solve_classic_bo, solve_simplexlike, SolveOptions};

fn main() -> colorful::Result<()> {
    let opts = SolveOptions::default();
    println!("{:<12} {:>8} {:>8}", "family", "simplex", "classic");
    for kind in GeneratorKind::ALL {
        let (mut a, mut b) = (0, 0);
        for seed in 0..10 {
            let inst = generate(&GeneratorSpec::new(kind, 6, seed))?;
            a += solve_simplexlike(&inst.config, &opts)?.report.pivots;
            let classic = solve_classic_bo(&inst.config, &opts)?;
            assert!(classic.certificate.verify(&classic.selection.points(&inst.config)));
            b += classic.report.pivots;
        }
        println!("{:<12} {:>8.1} {:>8.1}", kind.name(), a as f64 / 10.0, b as f64 / 10.0);
    }
    Ok(())
}
