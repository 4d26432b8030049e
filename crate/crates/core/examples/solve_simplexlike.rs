//! Solves a generated instance with the simplex-like method and checks the
//! convex combination exactly.

use colorful::generators::{generate, GeneratorKind, GeneratorSpec};
use colorful::pivot::{solve_simplexlike, PivotRule, SolveOptions};
use colorful::rational::{format, to_f64};

fn main() -> colorful::Result<()> {
    let inst = generate(&GeneratorSpec::new(GeneratorKind::Lowdensity, 8, 3))?;
    for rule in [PivotRule::Dantzig, PivotRule::Bland] {
        let sol = solve_simplexlike(&inst.config, &SolveOptions::with_rule(rule))?;
        let pts = sol.selection.points(&inst.config);
        assert!(sol.certificate.verify(&pts));
        println!(
            "{rule}: {} pivots in {:?}, picks {:?}",
            sol.report.pivots,
            sol.report.wall_time,
            sol.selection.picks().iter().flatten().collect::<Vec<_>>()
        );
        let z: Vec<String> = sol.report.objective_trace.iter().map(|v| format!("{:.4}", to_f64(v))).collect();
        println!("  z after each pivot: {}", z.join(" "));
    }

    let sol = solve_simplexlike(&inst.config, &SolveOptions::default())?;
    println!("\nweights of the first two points:");
    for w in sol.certificate.weights.iter().take(2) {
        println!("  {}", format(w));
    }
    Ok(())
}
