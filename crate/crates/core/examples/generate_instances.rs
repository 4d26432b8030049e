//! Draws one instance of every generator family and shows that a seed fully
//! determines it.
//!
//! ```text
//! cargo run --example generate_instances -- 4 7
//! ```

use colorful::generators::{generate, GeneratorKind, GeneratorSpec};
use colorful::io::to_json;

fn main() -> colorful::Result<()> {
    let mut args = std::env::args().skip(1);
    let d: usize = args.next().map_or(4, |s| s.parse().expect("dimension"));
    let seed: u64 = args.next().map_or(7, |s| s.parse().expect("seed"));

    for kind in GeneratorKind::ALL {
        let spec = GeneratorSpec::new(kind, d, seed);
        let inst = generate(&spec)?;
        let again = generate(&spec)?;
        assert_eq!(to_json(&inst), to_json(&again));
        let first = inst.config.point(0, 0);
        println!(
            "{kind:<12} {} colors x {} points, first point starts {}",
            inst.config.num_colors(),
            inst.config.color(0).len(),
            colorful::rational::format(&first.coords()[0]),
        );
    }

    let small = generate(&GeneratorSpec::new(GeneratorKind::Random, 2, seed))?;
    println!("\nrandom d=2 as JSON:\n{}", to_json(&small));
    Ok(())
}
