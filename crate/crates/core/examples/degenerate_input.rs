//! A degenerate instance is perturbed, solved, and the answer re-checked on
//! the original points.

use colorful::geometry::{
    is_general_position, perturb, GeneralPositionOptions, PerturbOptions, Point, PointConfiguration,
};
use colorful::pivot::{solve_simplexlike, SolveOptions};
use colorful::rational::frac;

fn main() -> colorful::Result<()> {
    // the first picks and their dummy point are collinear, and the origin
    // lies on a segment of the last color
    let cfg = PointConfiguration::new(
        2,
        vec![
            vec![Point::from_ints(&[1, 0]), Point::from_ints(&[-1, 1]), Point::from_ints(&[-1, -1])],
            vec![Point::from_ints(&[2, 0]), Point::from_ints(&[-1, 2]), Point::from_ints(&[-1, -2])],
            vec![Point::from_ints(&[1, 1]), Point::from_ints(&[-1, -1]), Point::from_ints(&[2, 2])],
        ],
    )?;
    let gp = GeneralPositionOptions::with_origin();
    println!("general position: {}", is_general_position(&cfg, &gp));

    let moved = perturb(&cfg, &frac(1, 1024), &PerturbOptions::default())?;
    println!("after perturbation: {}", is_general_position(&moved, &gp));

    let sol = solve_simplexlike(&cfg, &SolveOptions::default())?;
    println!(
        "perturbed run: {}, answer holds for the original points: {}",
        sol.report.perturbed, sol.verified
    );
    println!("picks {:?}", sol.selection.picks().iter().flatten().collect::<Vec<_>>());
    Ok(())
}
