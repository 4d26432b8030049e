//! The colorful linear programming decision oracle with and without
//! pruning, and the two liftings that keep the answer.

use colorful::games::{clp_decide, ClpOptions};
use colorful::generators::{add_color_pair, lift_dim};
use colorful::geometry::{Point, PointConfiguration};

fn main() -> colorful::Result<()> {
    // three colors in the plane, fewer than d+1 of them surround the origin
    let cfg = PointConfiguration::new(
        2,
        vec![
            vec![Point::from_ints(&[3, 1]), Point::from_ints(&[-2, 2])],
            vec![Point::from_ints(&[1, -3]), Point::from_ints(&[2, 2])],
            vec![Point::from_ints(&[-1, -1]), Point::from_ints(&[4, 0])],
        ],
    )?;
    for (name, c) in [
        ("original", cfg.clone()),
        ("lifted", lift_dim(&cfg)),
        ("two more colors", add_color_pair(&cfg)),
    ] {
        let pruned = clp_decide(&c, &ClpOptions::default())?;
        let full = clp_decide(&c, &ClpOptions::exhaustive())?;
        assert_eq!(pruned.is_yes(), full.is_yes());
        println!(
            "{name:<16} d={} colors={} answer={} nodes {} (pruned {}) vs {} exhaustive",
            c.dimension(),
            c.num_colors(),
            pruned.is_yes(),
            pruned.nodes,
            pruned.pruned,
            full.nodes
        );
        if let Some((sel, _)) = &pruned.witness {
            println!("  witness {:?}", sel.picks());
        }
    }
    Ok(())
}
