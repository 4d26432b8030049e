use std::cmp::Ordering;
use std::collections::HashSet;
use std::time::Instant;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::geometry::{ColorfulSelection, Point, PointConfiguration};
use crate::linalg;
use crate::rational::Rational;

use super::engine::{Engine, LiftedColumns};
use super::{hypothesis_failure, Backend, Outcome};

/// Index of the point of `T` to drop so that the remaining facet's affine
/// hull separates it from the origin, choosing the hull closest to the
/// origin. Returns the retained indices.
pub fn separating_facet(t: &[Point]) -> Result<Vec<usize>> {
    let d = t.first().map(Point::dim).unwrap_or(0);
    if t.len() != d + 1 || t.iter().any(|p| p.dim() != d) {
        return Err(Error::DimensionOrEmpty(format!(
            "expected {} points of dimension {d}",
            d + 1
        )));
    }
    let m: Vec<Vec<Rational>> = (0..=d)
        .map(|i| t.iter().map(|p| p.lifted()[i].clone()).collect())
        .collect();
    let inv = linalg::inverse(&m)
        .ok_or_else(|| Error::DegenerateState("simplex is affinely dependent".into()))?;
    let mut best: Option<(usize, Rational)> = None;
    for (j, row) in inv.iter().enumerate() {
        let b = &row[d];
        if !b.is_negative() {
            continue;
        }
        let norm: Rational = row[..d].iter().map(|v| v * v).sum();
        let dist = b * b / norm;
        if best.as_ref().is_none_or(|(_, bd)| dist < *bd) {
            best = Some((j, dist));
        }
    }
    let (drop, _) = best.ok_or(Error::NotSeparable)?;
    Ok((0..=d).filter(|&j| j != drop).collect())
}

pub(crate) fn run<E: Engine>(config: &PointConfiguration, backend: Backend) -> Result<Outcome> {
    let start = Instant::now();
    let d = config.dimension();
    let cols = LiftedColumns::new(config, None);
    let mut offsets = Vec::with_capacity(d + 1);
    let mut acc = 0;
    for c in config.colors() {
        offsets.push(acc);
        acc += c.len();
    }
    let store = E::prepare(&cols);
    let mut picks = vec![0usize; d + 1];
    let basis: Vec<usize> = offsets.clone();
    let mut engine = E::build(store, &basis).ok_or(Error::DegenerateTransversal)?;
    let mut visited: HashSet<Vec<usize>> = HashSet::new();
    let mut trace = Vec::new();
    loop {
        let lambda = engine.values();
        let infeasibility: Rational = lambda
            .iter()
            .filter(|v| E::sign(v) == Ordering::Less)
            .map(|v| -E::to_rational(v))
            .sum();
        trace.push(infeasibility);
        let mut facet: Option<(usize, E::Num)> = None;
        for (j, l) in lambda.iter().enumerate() {
            if E::sign(l) != Ordering::Less {
                continue;
            }
            let dist = engine.hyperplane_sq_distance(j);
            if facet.as_ref().is_none_or(|(_, b)| E::compare(&dist, b) == Ordering::Less) {
                facet = Some((j, dist));
            }
        }
        let Some((color, _)) = facet else {
            let selection = ColorfulSelection::full(picks);
            return Ok(Outcome {
                selection,
                pivots: trace.len() - 1,
                trace,
                elapsed: start.elapsed(),
                switched: false,
                backend,
            });
        };
        let key = picks.clone();
        if !visited.insert(key) {
            return Err(Error::CycleDetected {
                pivots: trace.len() - 1,
            });
        }
        // deepest point on the origin's side of the retained facet
        let mut enter: Option<(usize, E::Num)> = None;
        for idx in 0..config.color(color).len() {
            let v = engine.row_dot(color, offsets[color] + idx);
            if E::sign(&v) != Ordering::Less {
                continue;
            }
            if enter.as_ref().is_none_or(|(_, b)| E::compare(&v, b) == Ordering::Less) {
                enter = Some((idx, v));
            }
        }
        let Some((idx, _)) = enter else {
            return Err(hypothesis_failure(config, color));
        };
        if !engine.replace(color, offsets[color] + idx) {
            return Err(Error::DegenerateState("vanishing pivot element".into()));
        }
        picks[color] = idx;
    }
}

/// Exact check that `aff(T ∖ {T_j})` separates `T_j` from the origin.
pub fn facet_separates(t: &[Point], retained: &[usize]) -> bool {
    let d = t.len() - 1;
    let Some(dropped) = (0..=d).find(|j| !retained.contains(j)) else {
        return false;
    };
    let mut rows: Vec<Vec<Rational>> = retained.iter().map(|&i| t[i].lifted()).collect();
    rows.push(t[dropped].lifted());
    let side_point = linalg::sign_of_det(&rows);
    rows.pop();
    rows.push(Point::origin(d).lifted());
    let side_origin = linalg::sign_of_det(&rows);
    side_point != 0 && side_origin != 0 && side_point != side_origin
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_facet() {
        let t = [Point::from_ints(&[2]), Point::from_ints(&[5])];
        assert_eq!(separating_facet(&t).unwrap(), vec![0]);
        assert!(facet_separates(&t, &[0]));
        assert!(!facet_separates(&t, &[1]));
    }

    #[test]
    fn closest_of_the_separating_facets() {
        let t = [
            Point::from_ints(&[1, 0]),
            Point::from_ints(&[0, 1]),
            Point::from_ints(&[1, 1]),
        ];
        let f = separating_facet(&t).unwrap();
        assert_eq!(f, vec![0, 1]);
        assert!(facet_separates(&t, &f));
        // the other two facets do not separate their opposite vertex
        assert!(!facet_separates(&t, &[0, 2]));
        assert!(!facet_separates(&t, &[1, 2]));
    }

    #[test]
    fn origin_inside_is_not_separable() {
        let t = [
            Point::from_ints(&[1, 0]),
            Point::from_ints(&[0, 1]),
            Point::from_ints(&[-1, -1]),
        ];
        assert!(matches!(separating_facet(&t), Err(Error::NotSeparable)));
    }

    #[test]
    fn distances_decide_between_two_separating_facets() {
        // x+3y=4 at squared distance 8/5 beats 2x+y=3 at 9/5
        let t = [
            Point::from_ints(&[1, 1]),
            Point::from_ints(&[4, 0]),
            Point::from_ints(&[0, 3]),
        ];
        assert!(facet_separates(&t, &[0, 1]));
        assert!(facet_separates(&t, &[0, 2]));
        assert_eq!(separating_facet(&t).unwrap(), vec![0, 1]);
    }
}
