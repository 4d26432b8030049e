use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{ColorfulSelection, Point, PointConfiguration};
use crate::rational::Rational;

use super::engine::{Engine, ExactEngine, LiftedColumns};
use super::{dummy_point, PivotRule};

/// The program `min z` subject to `Aλ + z·v̄ = e_{d+1}`, `λ, z >= 0`.
///
/// Column `j < N` is the lifted `j`-th point in color-major order; column `N`
/// is the lifted dummy point.
#[derive(Debug, Clone)]
pub struct AuxiliaryProgram {
    config: PointConfiguration,
    dummy: Point,
    offsets: Vec<usize>,
    columns: LiftedColumns,
}

impl AuxiliaryProgram {
    pub fn new(config: &PointConfiguration, dummy: Point) -> Self {
        let mut offsets = Vec::with_capacity(config.num_colors() + 1);
        let mut acc = 0;
        for c in config.colors() {
            offsets.push(acc);
            acc += c.len();
        }
        offsets.push(acc);
        let columns = LiftedColumns::new(config, Some(&dummy));
        AuxiliaryProgram {
            config: config.clone(),
            dummy,
            offsets,
            columns,
        }
    }

    pub fn config(&self) -> &PointConfiguration {
        &self.config
    }

    pub fn dummy(&self) -> &Point {
        &self.dummy
    }

    /// Lifted dummy column `(v, 1)`.
    pub fn vbar(&self) -> &[Rational] {
        &self.columns.rational[self.dummy_column()]
    }

    /// Lifted point column `(x, 1)`.
    pub fn column(&self, col: usize) -> &[Rational] {
        &self.columns.rational[col]
    }

    pub fn rhs(&self) -> Vec<Rational> {
        let mut e = vec![crate::rational::zero(); self.config.dimension() + 1];
        e[self.config.dimension()] = crate::rational::one();
        e
    }

    pub fn num_point_columns(&self) -> usize {
        self.offsets[self.offsets.len() - 1]
    }

    pub fn dummy_column(&self) -> usize {
        self.num_point_columns()
    }

    pub fn column_of(&self, color: usize, index: usize) -> usize {
        self.offsets[color] + index
    }

    /// `(color, index)` of a point column.
    pub fn locate(&self, col: usize) -> (usize, usize) {
        let color = self.offsets.partition_point(|&o| o <= col) - 1;
        (color, col - self.offsets[color])
    }

    pub(crate) fn lifted(&self) -> &LiftedColumns {
        &self.columns
    }
}

/// Outcome of one pivot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PivotStep {
    /// A point left the basis; its color is now missing.
    Continue { leaving: (usize, usize) },
    /// The dummy left; the basis is a positively dependent colorful set.
    Terminal,
}

/// Basis `F ∪ {v}` of the auxiliary program and its factorization.
pub struct PivotState<E: Engine = ExactEngine> {
    program: AuxiliaryProgram,
    engine: E,
    basis: Vec<usize>,
    dummy_row: Option<usize>,
    missing_color: usize,
}

impl<E: Engine> PivotState<E> {
    /// Starts from a transversal of colors `0..d` given as one index per color.
    pub fn new(config: &PointConfiguration, transversal: &[usize]) -> Result<Self> {
        let d = config.dimension();
        if config.num_colors() != d + 1 {
            return Err(Error::InvalidInput(format!(
                "expected {} colors in dimension {d}, got {}",
                d + 1,
                config.num_colors()
            )));
        }
        if transversal.len() != d || transversal.iter().enumerate().any(|(c, &i)| i >= config.color(c).len()) {
            return Err(Error::InvalidInput("transversal must pick one point of each color 1..d".into()));
        }
        let f1: Vec<&Point> = transversal
            .iter()
            .enumerate()
            .map(|(c, &i)| config.point(c, i))
            .collect();
        let v = dummy_point(&f1)?;
        let program = AuxiliaryProgram::new(config, v);
        let mut basis: Vec<usize> = transversal
            .iter()
            .enumerate()
            .map(|(c, &i)| program.column_of(c, i))
            .collect();
        basis.push(program.dummy_column());
        let store = E::prepare(program.lifted());
        let engine = E::build(Arc::clone(&store), &basis).ok_or(Error::DegenerateTransversal)?;
        Ok(PivotState {
            program,
            engine,
            basis,
            dummy_row: Some(d),
            missing_color: d,
        })
    }

    pub fn program(&self) -> &AuxiliaryProgram {
        &self.program
    }

    pub fn is_terminal(&self) -> bool {
        self.dummy_row.is_none()
    }

    pub fn dummy_in_basis(&self) -> bool {
        self.dummy_row.is_some()
    }

    pub fn missing_color(&self) -> usize {
        self.missing_color
    }

    /// Current value of `z`; zero once the dummy has left.
    pub fn objective(&self) -> Rational {
        match self.dummy_row {
            Some(r) => E::to_rational(&self.engine.values()[r]),
            None => crate::rational::zero(),
        }
    }

    pub(crate) fn objective_num(&self) -> Option<E::Num> {
        self.dummy_row.map(|r| self.engine.values()[r].clone())
    }

    /// Basis point columns as `(color, index)`, excluding the dummy.
    pub fn basis_points(&self) -> Vec<(usize, usize)> {
        let dummy = self.program.dummy_column();
        self.basis
            .iter()
            .filter(|&&c| c != dummy)
            .map(|&c| self.program.locate(c))
            .collect()
    }

    /// Sorted column ids of the basis.
    pub fn basis_key(&self) -> Vec<usize> {
        let mut key = self.basis.clone();
        key.sort_unstable();
        key
    }

    /// Current basic solution converted to rationals, indexed like the basis.
    pub fn basic_values(&self) -> Vec<Rational> {
        self.engine.values().iter().map(E::to_rational).collect()
    }

    fn reduced_cost_col(&self, col: usize) -> Result<E::Num> {
        let Some(row) = self.dummy_row else {
            return Err(Error::InvalidInput("state is terminal".into()));
        };
        if self.basis.contains(&col) {
            return Err(Error::InvalidInput("candidate is already basic".into()));
        }
        let rc = E::neg(&self.engine.row_dot(row, col));
        if E::sign(&rc) == Ordering::Equal {
            return Err(Error::DegenerateState(
                "candidate lies on the affine hull of the transversal".into(),
            ));
        }
        Ok(rc)
    }

    /// Reduced cost `s/r` of the point `(color, index)`.
    pub fn reduced_cost(&self, color: usize, index: usize) -> Result<Rational> {
        self.check_point(color, index)?;
        self.reduced_cost_col(self.program.column_of(color, index))
            .map(|v| E::to_rational(&v))
    }

    fn check_point(&self, color: usize, index: usize) -> Result<()> {
        let cfg = self.program.config();
        if color >= cfg.num_colors() || index >= cfg.color(color).len() {
            return Err(Error::InvalidInput(format!("no point ({color}, {index})")));
        }
        Ok(())
    }

    /// Index within the missing color of the entering point under `rule`,
    /// or `None` when no point of that color has a negative reduced cost.
    pub fn choose_entering(&self, rule: PivotRule) -> Result<Option<usize>> {
        let color = self.missing_color;
        let mut best: Option<(usize, E::Num)> = None;
        for idx in 0..self.program.config().color(color).len() {
            let col = self.program.column_of(color, idx);
            let rc = match self.reduced_cost_col(col) {
                Ok(rc) => rc,
                Err(Error::DegenerateState(_)) => continue,
                Err(e) => return Err(e),
            };
            if E::sign(&rc) != Ordering::Less {
                continue;
            }
            match rule {
                PivotRule::Bland => return Ok(Some(idx)),
                PivotRule::Dantzig => {
                    if best.as_ref().is_none_or(|(_, b)| E::compare(&rc, b) == Ordering::Less) {
                        best = Some((idx, rc));
                    }
                }
            }
        }
        Ok(best.map(|(i, _)| i))
    }

    /// Brings the point `(missing_color, index)` into the basis.
    ///
    /// Ratio-test ties go to the dummy first, then to the lowest column id.
    pub fn pivot_once(&mut self, index: usize) -> Result<PivotStep> {
        let color = self.missing_color;
        self.check_point(color, index)?;
        let col = self.program.column_of(color, index);
        let rc = self.reduced_cost_col(col)?;
        if E::sign(&rc) != Ordering::Less {
            return Err(Error::InvalidInput("entering point must have a negative reduced cost".into()));
        }
        let w = self.engine.direction(col);
        let x = self.engine.values();
        let dummy_col = self.program.dummy_column();
        let mut leave: Option<(usize, E::Num)> = None;
        for (i, wi) in w.iter().enumerate() {
            if E::sign(wi) != Ordering::Greater {
                continue;
            }
            let ratio = E::ratio(&x[i], wi);
            let better = match &leave {
                None => true,
                Some((l, lr)) => match E::compare(&ratio, lr) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => {
                        let (a, b) = (self.basis[i], self.basis[*l]);
                        a == dummy_col || (b != dummy_col && a < b)
                    }
                },
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (row, _) = leave.ok_or_else(|| {
            Error::DegenerateState("no positive entry in the entering direction".into())
        })?;
        if !self.engine.replace(row, col) {
            return Err(Error::DegenerateState("vanishing pivot element".into()));
        }
        let left = std::mem::replace(&mut self.basis[row], col);
        if left == dummy_col {
            self.dummy_row = None;
            Ok(PivotStep::Terminal)
        } else {
            let leaving = self.program.locate(left);
            self.missing_color = leaving.0;
            Ok(PivotStep::Continue { leaving })
        }
    }

    /// Colorful selection formed by the basis once terminal.
    pub fn selection(&self) -> Option<ColorfulSelection> {
        if !self.is_terminal() {
            return None;
        }
        let mut picks = vec![0; self.program.config().num_colors()];
        for (c, i) in self.basis_points() {
            picks[c] = i;
        }
        Some(ColorfulSelection::full(picks))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pivot::engine::FloatEngine;
    use crate::rational::frac;

    fn line() -> PointConfiguration {
        PointConfiguration::new(
            1,
            vec![
                vec![Point::from_ints(&[2]), Point::from_ints(&[-1])],
                vec![Point::from_ints(&[-3]), Point::from_ints(&[5])],
            ],
        )
        .unwrap()
    }

    #[test]
    fn reduced_costs_on_the_line() {
        let st: PivotState = PivotState::new(&line(), &[0]).unwrap();
        assert_eq!(st.program().dummy(), &Point::from_ints(&[-2]));
        assert_eq!(st.reduced_cost(1, 0).unwrap(), frac(-5, 4));
        assert_eq!(st.reduced_cost(1, 1).unwrap(), frac(3, 4));
    }

    #[test]
    fn candidate_on_the_hyperplane_is_degenerate() {
        let cfg = PointConfiguration::new(
            1,
            vec![vec![Point::from_ints(&[2])], vec![Point::from_ints(&[2])]],
        )
        .unwrap();
        let st: PivotState = PivotState::new(&cfg, &[0]).unwrap();
        assert!(matches!(st.reduced_cost(1, 0), Err(Error::DegenerateState(_))));
    }

    #[test]
    fn single_pivot_reaches_the_optimum() {
        let mut st: PivotState = PivotState::new(&line(), &[0]).unwrap();
        assert_eq!(st.objective(), frac(1, 2));
        assert_eq!(st.choose_entering(PivotRule::Dantzig).unwrap(), Some(0));
        assert_eq!(st.pivot_once(0).unwrap(), PivotStep::Terminal);
        assert_eq!(st.selection().unwrap(), ColorfulSelection::full(vec![0, 0]));
        assert_eq!(st.basic_values(), vec![frac(3, 5), frac(2, 5)]);
        assert_eq!(st.objective(), crate::rational::zero());
    }

    #[test]
    fn float_state_matches_exact_state() {
        let mut st: PivotState<FloatEngine> = PivotState::new(&line(), &[0]).unwrap();
        assert!((crate::rational::to_f64(&st.reduced_cost(1, 0).unwrap()) + 1.25).abs() < 1e-12);
        assert_eq!(st.pivot_once(0).unwrap(), PivotStep::Terminal);
    }

    #[test]
    fn positive_cost_point_cannot_enter() {
        let mut st: PivotState = PivotState::new(&line(), &[0]).unwrap();
        assert!(matches!(st.pivot_once(1), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn locate_round_trips() {
        let st: PivotState = PivotState::new(&line(), &[1]).unwrap();
        let p = st.program();
        for c in 0..2 {
            for i in 0..2 {
                assert_eq!(p.locate(p.column_of(c, i)), (c, i));
            }
        }
        assert_eq!(p.vbar(), &[crate::rational::int(1), crate::rational::int(1)]);
        assert_eq!(p.rhs(), vec![crate::rational::zero(), crate::rational::one()]);
    }
}
