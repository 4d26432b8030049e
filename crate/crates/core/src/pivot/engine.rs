//! Basis factorizations behind the pivoting solvers.
//!
//! Both engines represent the inverse of the current `(d+1) x (d+1)` basis
//! matrix and update it in `O(d²)` when one column is exchanged. The exact
//! engine stores the integer matrix `Q = D · B⁻¹` with `D = ±det B`, after all
//! points were scaled to integers by one common positive factor; the float
//! engine stores `B⁻¹` in binary64 and refactors periodically.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::geometry::{Point, PointConfiguration};
use crate::linalg;
use crate::rational::{self, Rational};

/// Lifted columns `(x, 1)` of every point in color-major order, optionally
/// followed by a dummy column.
#[derive(Debug, Clone)]
pub struct LiftedColumns {
    pub(crate) rational: Vec<Vec<Rational>>,
}

impl LiftedColumns {
    pub fn new(config: &PointConfiguration, dummy: Option<&Point>) -> Self {
        let mut rational: Vec<Vec<Rational>> =
            config.iter_points().map(|(_, _, p)| p.lifted()).collect();
        if let Some(v) = dummy {
            rational.push(v.lifted());
        }
        LiftedColumns {
            rational,
        }
    }

    pub fn len(&self) -> usize {
        self.rational.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rational.is_empty()
    }

    pub fn height(&self) -> usize {
        self.rational.first().map_or(0, Vec::len)
    }
}

/// Arithmetic and factorization interface shared by the exact and float
/// solvers.
pub trait Engine: Sized + Send {
    type Num: Clone + fmt::Debug + Send;
    const NAME: &'static str;

    fn prepare(columns: &LiftedColumns) -> Arc<Self::Store>;
    type Store: Send + Sync;

    /// Factorizes the basis made of the given column ids; `None` if singular.
    fn build(store: Arc<Self::Store>, basis: &[usize]) -> Option<Self>;
    /// `B⁻¹ e_{d+1}`: the current basic solution.
    fn values(&self) -> Vec<Self::Num>;
    /// `B⁻¹ ā` for column `col`.
    fn direction(&self, col: usize) -> Vec<Self::Num>;
    /// `(B⁻¹ ā)_row`.
    fn row_dot(&self, row: usize, col: usize) -> Self::Num;
    /// Squared distance from the origin to the hyperplane where the
    /// barycentric coordinate `row` vanishes (in the engine's scaled space).
    fn hyperplane_sq_distance(&self, row: usize) -> Self::Num;
    /// Replaces basis column `row` by `col`; returns false when the pivot
    /// element vanishes.
    fn replace(&mut self, row: usize, col: usize) -> bool;

    fn sign(v: &Self::Num) -> Ordering;
    fn compare(a: &Self::Num, b: &Self::Num) -> Ordering;
    fn ratio(a: &Self::Num, b: &Self::Num) -> Self::Num;
    fn neg(a: &Self::Num) -> Self::Num;
    fn to_rational(v: &Self::Num) -> Rational;
}

/// Columns scaled to integers: coordinate rows by a common positive factor,
/// the trailing row of ones left as is.
pub struct IntegerColumns {
    cols: Vec<Vec<BigInt>>,
}

pub struct ExactEngine {
    store: Arc<IntegerColumns>,
    q: Vec<Vec<BigInt>>,
    det: BigInt,
}

impl ExactEngine {
    fn dot_row(&self, row: usize, col: usize) -> BigInt {
        let c = &self.store.cols[col];
        self.q[row]
            .iter()
            .zip(c)
            .filter(|(_, v)| !v.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }

    fn frac(&self, v: BigInt) -> Rational {
        Rational::new(v, self.det.clone())
    }
}

impl Engine for ExactEngine {
    type Num = Rational;
    type Store = IntegerColumns;
    const NAME: &'static str = "exact";

    fn prepare(columns: &LiftedColumns) -> Arc<IntegerColumns> {
        let h = columns.height();
        let scale = rational::common_denominator(
            columns.rational.iter().flat_map(|c| c[..h - 1].iter()),
        );
        let cols = columns
            .rational
            .iter()
            .map(|c| {
                let mut v: Vec<BigInt> = c[..h - 1]
                    .iter()
                    .map(|r| r.numer() * (&scale / r.denom()))
                    .collect();
                v.push(BigInt::one());
                v
            })
            .collect();
        Arc::new(IntegerColumns { cols })
    }

    fn build(store: Arc<IntegerColumns>, basis: &[usize]) -> Option<Self> {
        let n = basis.len();
        let m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| basis.iter().map(|&c| store.cols[c][i].clone()).collect())
            .collect();
        let (det, q) = linalg::adjugate(&m)?;
        Some(ExactEngine { store, q, det })
    }

    fn values(&self) -> Vec<Rational> {
        let last = self.q.len() - 1;
        self.q.iter().map(|row| self.frac(row[last].clone())).collect()
    }

    fn direction(&self, col: usize) -> Vec<Rational> {
        (0..self.q.len()).map(|r| self.frac(self.dot_row(r, col))).collect()
    }

    fn row_dot(&self, row: usize, col: usize) -> Rational {
        self.frac(self.dot_row(row, col))
    }

    fn hyperplane_sq_distance(&self, row: usize) -> Rational {
        let r = &self.q[row];
        let h = r.len() - 1;
        let norm: BigInt = r[..h].iter().map(|v| v * v).sum();
        Rational::new(&r[h] * &r[h], norm)
    }

    fn replace(&mut self, row: usize, col: usize) -> bool {
        let w: Vec<BigInt> = (0..self.q.len()).map(|r| self.dot_row(r, col)).collect();
        if w[row].is_zero() {
            return false;
        }
        let pivot_row = self.q[row].clone();
        for (i, qi) in self.q.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            for (v, p) in qi.iter_mut().zip(&pivot_row) {
                let num = &w[row] * &*v - &w[i] * p;
                debug_assert!(num.is_multiple_of(&self.det));
                *v = num / &self.det;
            }
        }
        self.det = w[row].clone();
        true
    }

    fn sign(v: &Rational) -> Ordering {
        if v.is_positive() {
            Ordering::Greater
        } else if v.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }

    fn compare(a: &Rational, b: &Rational) -> Ordering {
        a.cmp(b)
    }

    fn ratio(a: &Rational, b: &Rational) -> Rational {
        a / b
    }

    fn neg(a: &Rational) -> Rational {
        -a.clone()
    }

    fn to_rational(v: &Rational) -> Rational {
        v.clone()
    }
}

/// Absolute tolerance of the float backend.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

const REFACTOR_EVERY: usize = 64;

pub struct FloatColumns {
    cols: Vec<Vec<f64>>,
}

pub struct FloatEngine {
    store: Arc<FloatColumns>,
    basis: Vec<usize>,
    inv: Vec<Vec<f64>>,
    updates: usize,
}

fn invert_f64(m: Vec<Vec<f64>>) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            row
        })
        .collect();
    for k in 0..n {
        let p = (k..n).max_by(|&x, &y| a[x][k].abs().total_cmp(&a[y][k].abs()))?;
        if a[p][k].abs() < 1e-14 {
            return None;
        }
        a.swap(p, k);
        let inv = 1.0 / a[k][k];
        for v in a[k].iter_mut() {
            *v *= inv;
        }
        let pivot = a[k].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == k || row[k] == 0.0 {
                continue;
            }
            let f = row[k];
            for (v, p) in row.iter_mut().zip(&pivot) {
                *v -= f * p;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

impl FloatEngine {
    fn refactor(&mut self) -> bool {
        let n = self.basis.len();
        let m: Vec<Vec<f64>> = (0..n)
            .map(|i| self.basis.iter().map(|&c| self.store.cols[c][i]).collect())
            .collect();
        match invert_f64(m) {
            Some(inv) => {
                self.inv = inv;
                self.updates = 0;
                true
            }
            None => false,
        }
    }

    fn dot_row(&self, row: usize, col: usize) -> f64 {
        self.inv[row]
            .iter()
            .zip(&self.store.cols[col])
            .map(|(a, b)| a * b)
            .sum()
    }
}

impl Engine for FloatEngine {
    type Num = f64;
    type Store = FloatColumns;
    const NAME: &'static str = "float64";

    fn prepare(columns: &LiftedColumns) -> Arc<FloatColumns> {
        Arc::new(FloatColumns {
            cols: columns
                .rational
                .iter()
                .map(|c| c.iter().map(rational::to_f64).collect())
                .collect(),
        })
    }

    fn build(store: Arc<FloatColumns>, basis: &[usize]) -> Option<Self> {
        let mut e = FloatEngine {
            store,
            basis: basis.to_vec(),
            inv: Vec::new(),
            updates: 0,
        };
        e.refactor().then_some(e)
    }

    fn values(&self) -> Vec<f64> {
        let last = self.inv.len() - 1;
        self.inv.iter().map(|row| row[last]).collect()
    }

    fn direction(&self, col: usize) -> Vec<f64> {
        (0..self.inv.len()).map(|r| self.dot_row(r, col)).collect()
    }

    fn row_dot(&self, row: usize, col: usize) -> f64 {
        self.dot_row(row, col)
    }

    fn hyperplane_sq_distance(&self, row: usize) -> f64 {
        let r = &self.inv[row];
        let h = r.len() - 1;
        let norm: f64 = r[..h].iter().map(|v| v * v).sum();
        r[h] * r[h] / norm
    }

    fn replace(&mut self, row: usize, col: usize) -> bool {
        let w = self.direction(col);
        if w[row].abs() <= FLOAT_TOLERANCE {
            return false;
        }
        self.basis[row] = col;
        self.updates += 1;
        if self.updates >= REFACTOR_EVERY {
            return self.refactor();
        }
        let inv_p = 1.0 / w[row];
        for v in self.inv[row].iter_mut() {
            *v *= inv_p;
        }
        let pivot = self.inv[row].clone();
        for (i, r) in self.inv.iter_mut().enumerate() {
            if i == row || w[i] == 0.0 {
                continue;
            }
            for (v, p) in r.iter_mut().zip(&pivot) {
                *v -= w[i] * p;
            }
        }
        true
    }

    fn sign(v: &f64) -> Ordering {
        if *v > FLOAT_TOLERANCE {
            Ordering::Greater
        } else if *v < -FLOAT_TOLERANCE {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }

    fn compare(a: &f64, b: &f64) -> Ordering {
        a.total_cmp(b)
    }

    fn ratio(a: &f64, b: &f64) -> f64 {
        a / b
    }

    fn neg(a: &f64) -> f64 {
        -a
    }

    fn to_rational(v: &f64) -> Rational {
        Rational::from_float(*v).unwrap_or_else(Rational::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn config() -> PointConfiguration {
        PointConfiguration::new(
            2,
            vec![
                vec![Point::new(vec![frac(1, 2), int(0)]), Point::from_ints(&[3, 1])],
                vec![Point::new(vec![int(0), frac(2, 3)]), Point::from_ints(&[-1, 4])],
                vec![Point::from_ints(&[-1, -1]), Point::new(vec![frac(5, 7), int(-2)])],
            ],
        )
        .unwrap()
    }

    fn rational_inverse(cols: &LiftedColumns, basis: &[usize]) -> Vec<Vec<Rational>> {
        let n = basis.len();
        let m: Vec<Vec<Rational>> = (0..n)
            .map(|i| basis.iter().map(|&c| cols.rational[c][i].clone()).collect())
            .collect();
        linalg::inverse(&m).unwrap()
    }

    #[test]
    fn exact_engine_tracks_rational_inverse_through_updates() {
        let cfg = config();
        let cols = LiftedColumns::new(&cfg, Some(&Point::from_ints(&[-1, 1])));
        let store = ExactEngine::prepare(&cols);
        let mut basis = vec![0, 2, 6];
        let mut e = ExactEngine::build(store, &basis).unwrap();
        for (row, col) in [(2, 4), (0, 1), (1, 3), (2, 5)] {
            assert!(e.replace(row, col));
            basis[row] = col;
            let inv = rational_inverse(&cols, &basis);
            let values: Vec<Rational> = inv.iter().map(|r| r[2].clone()).collect();
            assert_eq!(e.values(), values);
            for c in 0..cols.len() {
                let expect: Vec<Rational> = inv
                    .iter()
                    .map(|r| rational::dot(r, &cols.rational[c]))
                    .collect();
                assert_eq!(e.direction(c), expect);
            }
        }
    }

    #[test]
    fn float_engine_agrees_with_exact() {
        let cfg = config();
        let cols = LiftedColumns::new(&cfg, Some(&Point::from_ints(&[-1, 1])));
        let mut ex = ExactEngine::build(ExactEngine::prepare(&cols), &[0, 2, 6]).unwrap();
        let mut fl = FloatEngine::build(FloatEngine::prepare(&cols), &[0, 2, 6]).unwrap();
        for (row, col) in [(2, 4), (0, 1), (1, 3)] {
            assert!(ex.replace(row, col));
            assert!(fl.replace(row, col));
            for (a, b) in ex.values().iter().zip(fl.values()) {
                assert!((rational::to_f64(a) - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn singular_basis_is_rejected() {
        let cfg = PointConfiguration::new(
            1,
            vec![vec![Point::from_ints(&[2])], vec![Point::from_ints(&[2])]],
        )
        .unwrap();
        let cols = LiftedColumns::new(&cfg, None);
        assert!(ExactEngine::build(ExactEngine::prepare(&cols), &[0, 1]).is_none());
        assert!(FloatEngine::build(FloatEngine::prepare(&cols), &[0, 1]).is_none());
    }

    #[test]
    fn hyperplane_distance_of_unit_simplex_facet() {
        // T = {(1,0),(0,1),(1,1)}; the facet opposite (1,1) is x+y=1
        let cfg = PointConfiguration::new(
            2,
            vec![
                vec![Point::from_ints(&[1, 0])],
                vec![Point::from_ints(&[0, 1])],
                vec![Point::from_ints(&[1, 1])],
            ],
        )
        .unwrap();
        let cols = LiftedColumns::new(&cfg, None);
        let e = ExactEngine::build(ExactEngine::prepare(&cols), &[0, 1, 2]).unwrap();
        assert_eq!(e.hyperplane_sq_distance(2), frac(1, 2));
    }
}
