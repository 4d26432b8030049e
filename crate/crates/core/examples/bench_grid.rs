//! A small benchmark grid written to CSV.

use colorful::bench::{run_bench, BenchPlan};
use colorful::generators::GeneratorKind;

fn main() -> colorful::Result<()> {
    let out = std::env::temp_dir().join("colorful_bench.csv");
    let plan = BenchPlan {
        kinds: GeneratorKind::ALL.to_vec(),
        dimensions: vec![3, 6],
        instances: 10,
        output: Some(out.clone()),
        ..Default::default()
    };
    for row in run_bench(&plan)? {
        println!(
            "{:<12} d={:<3} {:>8.3} ms {:>6.2} pivots {} failures",
            row.generator.name(),
            row.dimension,
            row.avg_time_ms,
            row.avg_pivots,
            row.failures
        );
    }
    println!("\n{}", std::fs::read_to_string(&out).expect("csv written"));
    Ok(())
}
