//! Phase-I simplex over exact rationals.
//!
//! Decides `{x >= 0 : Ax = b}` and returns either a feasible point or a dual
//! vector `y` with `yᵀA >= 0` and `yᵀb < 0`. The tableau is dense and pivots
//! follow Bland's rule, so the method always terminates.

use num_traits::{One, Signed, Zero};

use crate::rational::{dot, Rational};

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Feasible(Vec<Rational>),
    Infeasible(Vec<Rational>),
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Feasible(_))
    }

    /// Checks the returned branch exactly against `(a, b)`.
    pub fn verify(&self, a: &[Vec<Rational>], b: &[Rational]) -> bool {
        let n = a.first().map_or(0, Vec::len);
        match self {
            LpOutcome::Feasible(x) => {
                x.len() == n
                    && x.iter().all(|v| !v.is_negative())
                    && a.iter().zip(b).all(|(row, bi)| &dot(row, x) == bi)
            }
            LpOutcome::Infeasible(y) => {
                if y.len() != a.len() {
                    return false;
                }
                let col_ok = (0..n).all(|j| {
                    let s: Rational = a.iter().zip(y).map(|(row, yi)| &row[j] * yi).sum();
                    !s.is_negative()
                });
                col_ok && dot(y, b).is_negative()
            }
        }
    }
}

/// Exact feasibility of `Ax = b, x >= 0`.
///
/// Panics if `a` is ragged or `b` has the wrong length.
pub fn lp_feasibility(a: &[Vec<Rational>], b: &[Rational]) -> LpOutcome {
    let m = a.len();
    assert_eq!(b.len(), m, "rhs length must equal the number of rows");
    let n = a.first().map_or(0, Vec::len);
    assert!(a.iter().all(|r| r.len() == n), "ragged constraint matrix");

    if m == 0 {
        return LpOutcome::Feasible(vec![Rational::zero(); n]);
    }

    // flip rows so that the rhs is nonnegative
    let flip: Vec<bool> = b.iter().map(|v| v.is_negative()).collect();
    let width = n + m + 1;
    let rhs = n + m;
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = vec![Rational::zero(); width];
            for j in 0..n {
                row[j] = if flip[i] { -a[i][j].clone() } else { a[i][j].clone() };
            }
            row[n + i] = Rational::one();
            row[rhs] = if flip[i] { -b[i].clone() } else { b[i].clone() };
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();

    // reduced costs of the phase-I objective (sum of artificials)
    let mut cost = vec![Rational::zero(); width];
    for j in 0..n {
        cost[j] = -t.iter().map(|row| row[j].clone()).sum::<Rational>();
    }
    cost[rhs] = -t.iter().map(|row| row[rhs].clone()).sum::<Rational>();

    loop {
        let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][rhs] / &t[i][enter];
            leave = match leave {
                None => Some((i, ratio)),
                Some((li, lr)) => {
                    if ratio < lr || (ratio == lr && basis[i] < basis[li]) {
                        Some((i, ratio))
                    } else {
                        Some((li, lr))
                    }
                }
            };
        }
        // phase-I objective is bounded below by zero
        let (row, _) = leave.expect("phase-I program cannot be unbounded");
        pivot(&mut t, &mut cost, row, enter);
        basis[row] = enter;
    }

    // cost[rhs] holds minus the objective value
    if cost[rhs].is_zero() {
        let mut x = vec![Rational::zero(); n];
        for (i, &bv) in basis.iter().enumerate() {
            if bv < n {
                x[bv] = t[i][rhs].clone();
            }
        }
        LpOutcome::Feasible(x)
    } else {
        // phase-I duals: y*_i = 1 - (reduced cost of artificial i)
        let y = (0..m)
            .map(|i| {
                let dual = Rational::one() - &cost[n + i];
                if flip[i] {
                    dual
                } else {
                    -dual
                }
            })
            .collect();
        LpOutcome::Infeasible(y)
    }
}

fn pivot(t: &mut [Vec<Rational>], cost: &mut [Rational], row: usize, col: usize) {
    let inv = t[row][col].recip();
    for v in t[row].iter_mut() {
        if !v.is_zero() {
            *v = &*v * &inv;
        }
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col].clone();
        for (v, p) in r.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= &f * p;
            }
        }
    }
    if !cost[col].is_zero() {
        let f = cost[col].clone();
        for (v, p) in cost.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= &f * p;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn zero_solution_is_feasible() {
        let a = mat(&[&[1, -1]]);
        let out = lp_feasibility(&a, &[int(0)]);
        assert_eq!(out, LpOutcome::Feasible(vec![int(0), int(0)]));
        assert!(out.verify(&a, &[int(0)]));
    }

    #[test]
    fn nonnegative_row_with_negative_rhs_is_infeasible() {
        let a = mat(&[&[1, 2]]);
        let out = lp_feasibility(&a, &[int(-1)]);
        assert_eq!(out, LpOutcome::Infeasible(vec![int(1)]));
        assert!(out.verify(&a, &[int(-1)]));
    }

    #[test]
    fn square_system_solution() {
        let a = mat(&[&[1, -3], &[1, 1]]);
        let b = [int(0), int(1)];
        let out = lp_feasibility(&a, &b);
        assert_eq!(out, LpOutcome::Feasible(vec![frac(3, 4), frac(1, 4)]));
        assert!(out.verify(&a, &b));
    }

    #[test]
    fn degenerate_and_redundant_rows() {
        // duplicated equality and a zero row
        let a = mat(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 0]]);
        let b = [int(2), int(2), int(0)];
        let out = lp_feasibility(&a, &b);
        assert!(out.is_feasible());
        assert!(out.verify(&a, &b));
        // contradictory duplicate
        let b = [int(2), int(3), int(0)];
        let out = lp_feasibility(&a, &b);
        assert!(!out.is_feasible());
        assert!(out.verify(&a, &b));
    }

    #[test]
    fn verify_rejects_wrong_certificates() {
        let a = mat(&[&[1, 2]]);
        let b = [int(-1)];
        assert!(!LpOutcome::Infeasible(vec![int(-1)]).verify(&a, &b));
        assert!(!LpOutcome::Feasible(vec![int(1), int(0)]).verify(&a, &b));
    }
}
