//! Colorful circuits and colorful s-t paths in digraphs whose arcs are
//! colored by arc-disjoint circuits or paths.

use colorful::combinatorics::digraph::{random_circuit_instance, random_path_instance};
use colorful::combinatorics::{colorful_circuit, colorful_path, ArcFamily, Digraph};

fn main() -> colorful::Result<()> {
    // two vertices, two parallel 2-cycles
    let g = Digraph::new(2, vec![(0, 1), (1, 0), (0, 1), (1, 0)])?;
    let f = ArcFamily::new(vec![vec![0, 1], vec![2, 3]]);
    println!("2-cycles: circuit {:?}", colorful_circuit(&g, &f)?);

    // s -> x -> t and s -> t
    let g = Digraph::new(3, vec![(0, 1), (1, 2), (0, 2)])?;
    let f = ArcFamily::new(vec![vec![0, 1], vec![2]]);
    println!("small path instance: path {:?}", colorful_path(&g, 0, 2, &f)?);

    for seed in 0..3 {
        let (g, f) = random_circuit_instance(8, 4, seed);
        let c = colorful_circuit(&g, &f)?;
        println!("random circuits seed {seed}: {} arcs, max shared {}", c.len(), f.max_shared(&c));
        let (g, f) = random_path_instance(8, seed);
        let p = colorful_path(&g, 0, 7, &f)?;
        println!("random paths    seed {seed}: {} arcs, max shared {}", p.len(), f.max_shared(&p));
    }
    Ok(())
}
