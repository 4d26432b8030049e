//! Decides `0 ∈ conv(S)` and `p ∈ cone(S)` with exact certificates either
//! way.

use colorful::geometry::{cone_member, is_positively_dependent, ConeMembership, Dependence, Point};
use colorful::rational::format;

fn show(v: &[colorful::rational::Rational]) -> String {
    v.iter().map(format).collect::<Vec<_>>().join(", ")
}

fn main() -> colorful::Result<()> {
    let around = [Point::from_ints(&[2, 0]), Point::from_ints(&[-1, 3]), Point::from_ints(&[-1, -3])];
    let beside = [Point::from_ints(&[1, 1]), Point::from_ints(&[2, -1]), Point::from_ints(&[3, 0])];

    for (name, pts) in [("around", &around), ("beside", &beside)] {
        let refs: Vec<&Point> = pts.iter().collect();
        let answer = is_positively_dependent(pts)?;
        assert!(answer.verify(&refs));
        match answer {
            Dependence::Dependent(c) => println!("{name}: 0 = combination with weights [{}]", show(&c.weights)),
            Dependence::Independent(f) => println!("{name}: separated by normal [{}]", show(&f.normal)),
        }
    }

    let p = Point::from_ints(&[5, 1]);
    match cone_member(&beside, &p)? {
        ConeMembership::Member(mu) => println!("(5, 1) = nonnegative combination [{}]", show(&mu)),
        ConeMembership::Separated(y) => println!("(5, 1) separated by [{}]", show(&y)),
    }
    Ok(())
}
