//! Nash equilibria of bimatrix games through the colorful cone reduction,
//! cross-checked by support enumeration.

use colorful::games::{solve_bimatrix_traced, support_enumeration, BimatrixGame, ClpOptions};
use colorful::rational::format;

fn show(v: &[colorful::rational::Rational]) -> String {
    v.iter().map(format).collect::<Vec<_>>().join(", ")
}

fn main() -> colorful::Result<()> {
    let games = [
        ("matching pennies", BimatrixGame::from_ints(&[&[1, -1], &[-1, 1]], &[&[-1, 1], &[1, -1]])?),
        ("battle of the sexes", BimatrixGame::from_ints(&[&[2, 0], &[0, 1]], &[&[1, 0], &[0, 2]])?),
        (
            "3x3",
            BimatrixGame::from_ints(&[&[3, 0, 2], &[1, 4, 0], &[0, 2, 5]], &[&[1, 3, 0], &[4, 0, 2], &[2, 1, 3]])?,
        ),
    ];
    for (name, game) in games {
        let (p, calls) = solve_bimatrix_traced(&game, &ClpOptions::default())?;
        assert!(game.is_equilibrium(&p));
        let all = support_enumeration(&game);
        let (u, v) = game.payoffs(&p);
        println!("{name}: y = ({}), z = ({})", show(&p.y), show(&p.z));
        println!(
            "  payoffs {} / {}, {calls} oracle calls, {} equilibria by support enumeration, found one listed: {}",
            format(&u),
            format(&v),
            all.len(),
            all.contains(&p)
        );
    }
    Ok(())
}
