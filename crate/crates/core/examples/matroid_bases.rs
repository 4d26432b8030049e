//! Colorful bases of matroids: greedy construction, a second basis through
//! matroid intersection, and an axiom spot-check.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use colorful::combinatorics::{
    another_colorful_basis, check_axioms, greedy_colorful_basis, matroid_intersection, GraphicMatroid, LinearMatroid,
    Matroid, PartitionMatroid, UniformMatroid,
};
use colorful::rational::int;

fn main() -> colorful::Result<()> {
    let u = UniformMatroid { n: 4, rank: 2 };
    let coloring = [0, 0, 1, 1];
    let b = greedy_colorful_basis(&u, &coloring)?;
    println!("U(2,4): greedy {b:?}, another {:?}", another_colorful_basis(&u, &coloring, &b)?);

    // triangle 0-1-2 with pendant vertex 3; each color is a spanning tree
    let g = GraphicMatroid {
        vertices: 4,
        edges: vec![(0, 1), (1, 2), (2, 3), (1, 2), (2, 0), (3, 2), (0, 2), (0, 1), (2, 3)],
    };
    let coloring = [0, 0, 0, 1, 1, 1, 2, 2, 2];
    let b = greedy_colorful_basis(&g, &coloring)?;
    println!("rainbow spanning tree {b:?}, another {:?}", another_colorful_basis(&g, &coloring, &b)?);

    let lin = LinearMatroid {
        vectors: vec![vec![int(1), int(0)], vec![int(2), int(0)], vec![int(0), int(1)], vec![int(1), int(1)]],
    };
    println!("rank of the vectors {}, a rank-deficient color fails: {}", lin.rank(), greedy_colorful_basis(&lin, &[0, 0, 1, 1]).is_err());

    let rows = PartitionMatroid::unit(vec![0, 0, 1, 1, 2]);
    let cols = PartitionMatroid::unit(vec![0, 1, 0, 1, 1]);
    println!("bipartite matching via intersection: {:?}", matroid_intersection(&rows, &cols));

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    check_axioms(&g, 100, &mut rng)?;
    println!("axiom spot-check passed");
    Ok(())
}
