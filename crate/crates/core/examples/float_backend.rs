//! Pivots in binary64 and certifies the final basis exactly.

use std::time::Instant;

use colorful::generators::{generate, GeneratorKind, GeneratorSpec};
use colorful::pivot::{solve_simplexlike, Backend, SolveOptions};

fn main() -> colorful::Result<()> {
    let inst = generate(&GeneratorSpec::new(GeneratorKind::Random, 24, 1))?;
    for backend in [Backend::Exact, Backend::Float64] {
        let t = Instant::now();
        let sol = solve_simplexlike(&inst.config, &SolveOptions::with_backend(backend))?;
        sol.record(None).verify(&inst.config)?;
        println!(
            "{backend:<8} {} pivots, solve {:?}, total {:?}, final basis from {}",
            sol.report.pivots,
            sol.report.wall_time,
            t.elapsed(),
            sol.report.backend
        );
    }
    Ok(())
}
