//! Exact dense linear algebra over the rationals.
//!
//! Elimination runs fraction-free on integer matrices (Bareiss), after each
//! row has been scaled by the lcm of its denominators. Intermediate entries
//! stay minors of the input, which keeps their size polynomial.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::modular;
use crate::rational::{common_denominator, Rational};

/// Scales every row by the lcm of its denominators. Row scaling by positive
/// integers preserves the solution set of `rows * x = rhs` when the right-hand
/// side is part of the row.
pub fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = common_denominator(row);
            row.iter()
                .map(|r| r.numer() * (&l / r.denom()))
                .collect()
        })
        .collect()
}

/// Scales every column by the lcm of its denominators.
pub fn integer_columns(cols: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    integer_rows(cols)
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn det_integer(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

pub fn determinant(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    if n == 0 {
        return Rational::one();
    }
    let scales: Vec<BigInt> = rows.iter().map(|r| common_denominator(r)).collect();
    let empty = vec![Vec::new(); n];
    let det = match modular::solve(&integer_rows(rows), &empty) {
        Some(sol) => sol.det,
        None => return Rational::zero(),
    };
    let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    Rational::new(det, scale)
}

/// `(det A, adj A)` of a square integer matrix, so that `A⁻¹ = adj A / det A`;
/// `None` when singular.
pub fn adjugate(a: &[Vec<BigInt>]) -> Option<(BigInt, Vec<Vec<BigInt>>)> {
    let n = a.len();
    let identity: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    modular::solve(a, &identity).map(|s| (s.det, s.numerators))
}

/// Solves the square system `a x = b` in Cramer form: returns integer
/// numerators `N` and a nonzero `D` with `x = N / D`, unreduced.
pub fn solve_cramer(a: &[Vec<Rational>], b: &[Rational]) -> Option<(Vec<BigInt>, BigInt)> {
    let n = a.len();
    assert_eq!(b.len(), n, "right-hand side length mismatch");
    if n == 0 {
        return Some((Vec::new(), BigInt::one()));
    }
    let rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut m = integer_rows(&rows);
    let rhs: Vec<Vec<BigInt>> = m.iter_mut().map(|row| vec![row.pop().expect("augmented row")]).collect();
    let sol = modular::solve(&m, &rhs)?;
    let nums = sol
        .numerators
        .into_iter()
        .map(|mut row| row.pop().expect("one column"))
        .collect();
    Some((nums, sol.det))
}

/// Solves the square system `a x = b`; `None` when `a` is singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let (nums, det) = solve_cramer(a, b)?;
    Some(nums.into_iter().map(|v| Rational::new(v, det.clone())).collect())
}

/// Inverse of a square rational matrix; `None` when singular.
pub fn inverse(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    // (S A)⁻¹ S = A⁻¹ for the diagonal row scaling S
    let scales: Vec<BigInt> = a.iter().map(|r| common_denominator(r)).collect();
    let m = integer_rows(a);
    let rhs: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { scales[i].clone() } else { BigInt::zero() }).collect())
        .collect();
    let sol = modular::solve(&m, &rhs)?;
    Some(
        sol.numerators
            .into_iter()
            .map(|row| row.into_iter().map(|v| Rational::new(v, sol.det.clone())).collect())
            .collect(),
    )
}

/// Rank by rational Gaussian elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m = integer_rows(rows);
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let (a, b) = (m[r][c].clone(), m[i][c].clone());
            for j in c..cols {
                let v = &m[i][j] * &a - &m[r][j] * &b;
                m[i][j] = v;
            }
            let g = m[i]
                .iter()
                .fold(BigInt::zero(), |g, v| num_integer::Integer::gcd(&g, v));
            if !g.is_zero() && !g.is_one() {
                for v in m[i].iter_mut() {
                    *v = &*v / &g;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// A nonzero vector `x` with `a x = 0`, if the columns of `a` are dependent.
pub fn kernel_vector(a: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut x = vec![Rational::zero(); cols];
    x[free] = Rational::one();
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = -m[i][free].clone();
    }
    Some(x)
}

/// Mersenne prime 2^61 - 1.
pub const MOD_P: u64 = (1u64 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    // fold the 122-bit product twice using 2^61 = 1
    let x = a as u128 * b as u128;
    let r = (x as u64 & MOD_P) + (x >> 61) as u64;
    let r = (r & MOD_P) + (r >> 61);
    if r >= MOD_P {
        r - MOD_P
    } else {
        r
    }
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

/// Residue of an integer modulo [`MOD_P`] in `[0, MOD_P)`.
pub fn bigint_mod(v: &BigInt) -> u64 {
    let (sign, digits) = v.to_u64_digits();
    let r = digits
        .iter()
        .rev()
        .fold(0u64, |r, &d| ((((r as u128) << 64) | d as u128) % MOD_P as u128) as u64);
    if sign == num_bigint::Sign::Minus && r != 0 {
        MOD_P - r
    } else {
        r
    }
}

/// Residue of a rational modulo [`MOD_P`]; `None` when the denominator
/// vanishes modulo the prime.
pub fn rational_mod(r: &Rational) -> Option<u64> {
    let d = bigint_mod(r.denom());
    if d == 0 {
        return None;
    }
    Some(mul_mod(bigint_mod(r.numer()), pow_mod(d, MOD_P - 2)))
}

/// Determinant modulo [`MOD_P`] of a matrix given by residues.
pub fn det_mod(mut m: Vec<Vec<u64>>) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| m[i][k] != 0) else {
            return 0;
        };
        if p != k {
            m.swap(p, k);
            det = (MOD_P - det) % MOD_P;
        }
        det = mul_mod(det, m[k][k]);
        let inv = pow_mod(m[k][k], MOD_P - 2);
        for i in k + 1..n {
            if m[i][k] == 0 {
                continue;
            }
            let f = mul_mod(m[i][k], inv);
            for j in k..n {
                let sub = mul_mod(f, m[k][j]);
                m[i][j] = if m[i][j] >= sub { m[i][j] - sub } else { m[i][j] + MOD_P - sub };
            }
        }
    }
    det
}

pub fn is_zero_det_fast(rows: &[Vec<Rational>]) -> bool {
    let residues: Option<Vec<Vec<u64>>> = rows
        .iter()
        .map(|row| row.iter().map(rational_mod).collect())
        .collect();
    if let Some(r) = residues {
        if det_mod(r) != 0 {
            return false;
        }
    }
    determinant(rows).is_zero()
}

pub fn sign_of_det(rows: &[Vec<Rational>]) -> i32 {
    let d = determinant(rows);
    if d.is_positive() {
        1
    } else if d.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(determinant(&m(&[&[1, 2], &[3, 4]])), int(-2));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), int(-1));
        assert_eq!(determinant(&m(&[&[1, 2], &[2, 4]])), int(0));
        let a = vec![vec![frac(1, 2), frac(1, 3)], vec![frac(1, 4), frac(1, 5)]];
        // 1/10 - 1/12 = 1/60
        assert_eq!(determinant(&a), frac(1, 60));
        let a = m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]);
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(determinant(&a), int(0));
        let a = m(&[&[0, 0, 1], &[0, 2, 0], &[3, 0, 0]]);
        assert_eq!(determinant(&a), int(-6));
    }

    #[test]
    fn solve_two_by_two() {
        // x - 3y = 0, x + y = 1  =>  (3/4, 1/4)
        let x = solve(&m(&[&[1, -3], &[1, 1]]), &[int(0), int(1)]).unwrap();
        assert_eq!(x, vec![frac(3, 4), frac(1, 4)]);
        assert!(solve(&m(&[&[1, 2], &[2, 4]]), &[int(0), int(1)]).is_none());
    }

    #[test]
    fn inverse_matches_identity_product() {
        let a = vec![
            vec![frac(1, 2), int(3), int(-1)],
            vec![int(0), frac(2, 3), int(4)],
            vec![int(5), int(1), frac(-7, 5)],
        ];
        let inv = inverse(&a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let v: Rational = (0..3).map(|k| &a[i][k] * &inv[k][j]).sum();
                assert_eq!(v, if i == j { int(1) } else { int(0) });
            }
        }
    }

    #[test]
    fn rank_and_kernel() {
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]])), 2);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
        let a = m(&[&[1, 2, 3], &[0, 1, 1]]);
        let k = kernel_vector(&a).unwrap();
        for row in &a {
            assert_eq!(crate::rational::dot(row, &k), int(0));
        }
        assert!(kernel_vector(&m(&[&[1, 0], &[0, 1]])).is_none());
    }

    #[test]
    fn multimodular_determinant_matches_bareiss() {
        let a: Vec<Vec<Rational>> = (0..7)
            .map(|i| (0..7).map(|j| frac((i * 7 + j * j * 3 + 1) % 11 - 5, (i + 2 * j) % 5 + 1)).collect())
            .collect();
        let scales = a.iter().fold(BigInt::one(), |acc, r| acc * common_denominator(r));
        let bareiss = Rational::new(det_integer(integer_rows(&a)), scales);
        assert_eq!(determinant(&a), bareiss);
    }

    #[test]
    fn modular_determinant_agrees_on_zero_pattern() {
        let a = m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]);
        assert!(is_zero_det_fast(&a));
        let b = vec![vec![frac(1, 10), int(3)], vec![frac(7, 3), int(1)]];
        assert!(!is_zero_det_fast(&b));
        let r = rational_mod(&frac(1, 2)).unwrap();
        assert_eq!(mul_mod(r, 2), 1);
    }
}
