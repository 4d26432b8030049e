//! Colored point configurations and exact membership tests.
//!
//! A set of points is *positively dependent* when it is nonempty and the
//! origin lies in its convex hull. Every test here returns a certificate that
//! can be checked independently in exact arithmetic: convex (or conic)
//! weights for a yes, a strictly separating normal for a no.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{lp_feasibility, LpOutcome};
use crate::rational::{self, dot, Rational};

/// Default cap on the number of colorful selections examined by brute force.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1_000_000;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(#[serde(with = "rational::serde_vec")] pub Vec<Rational>);

impl std::hash::Hash for Point {
    // rationals are kept in lowest terms, so equal values share these parts
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for r in &self.0 {
            r.numer().hash(state);
            r.denom().hash(state);
        }
    }
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    /// The point with a trailing 1 appended.
    pub fn lifted(&self) -> Vec<Rational> {
        let mut v = self.0.clone();
        v.push(Rational::one());
        v
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rational::to_f64).collect()
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(rational::format).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `k` colored point sets in dimension `d`, with an optional target point for
/// the conic variant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointConfiguration {
    dimension: usize,
    colors: Vec<Vec<Point>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<Point>,
}

impl PointConfiguration {
    pub fn new(dimension: usize, colors: Vec<Vec<Point>>) -> Result<Self> {
        Self::with_target(dimension, colors, None)
    }

    pub fn with_target(
        dimension: usize,
        colors: Vec<Vec<Point>>,
        target: Option<Point>,
    ) -> Result<Self> {
        let cfg = PointConfiguration {
            dimension,
            colors,
            target,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks the structural invariants (used after deserialization too).
    pub fn validate(&self) -> Result<()> {
        if self.dimension == 0 {
            return Err(Error::DimensionOrEmpty("dimension must be positive".into()));
        }
        if self.colors.is_empty() {
            return Err(Error::DimensionOrEmpty("at least one color is required".into()));
        }
        for (i, c) in self.colors.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::DimensionOrEmpty(format!("color {i} is empty")));
            }
            if let Some(p) = c.iter().find(|p| p.dim() != self.dimension) {
                return Err(Error::DimensionOrEmpty(format!(
                    "color {i} has a point of length {} in dimension {}",
                    p.dim(),
                    self.dimension
                )));
            }
        }
        if let Some(t) = &self.target {
            if t.dim() != self.dimension {
                return Err(Error::DimensionOrEmpty("target has the wrong length".into()));
            }
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn num_colors(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[Vec<Point>] {
        &self.colors
    }

    pub fn color(&self, i: usize) -> &[Point] {
        &self.colors[i]
    }

    pub fn point(&self, color: usize, index: usize) -> &Point {
        &self.colors[color][index]
    }

    pub fn target(&self) -> Option<&Point> {
        self.target.as_ref()
    }

    pub fn set_target(&mut self, target: Option<Point>) {
        self.target = target;
    }

    pub fn total_points(&self) -> usize {
        self.colors.iter().map(Vec::len).sum()
    }

    /// `(color, index, point)` in color-major order.
    pub fn iter_points(&self) -> impl Iterator<Item = (usize, usize, &Point)> {
        self.colors
            .iter()
            .enumerate()
            .flat_map(|(c, pts)| pts.iter().enumerate().map(move |(i, p)| (c, i, p)))
    }

    /// Number of full colorful selections, saturating at `u64::MAX`.
    pub fn selection_count(&self) -> u64 {
        self.colors
            .iter()
            .fold(1u64, |acc, c| acc.saturating_mul(c.len() as u64))
    }

    /// Whether every color is positively dependent, with the first failing
    /// color's certificate otherwise.
    pub fn check_colors_dependent(&self) -> std::result::Result<(), (usize, FarkasCertificate)> {
        for (i, c) in self.colors.iter().enumerate() {
            if let Dependence::Independent(cert) =
                is_positively_dependent(c).expect("colors are nonempty")
            {
                return Err((i, cert));
            }
        }
        Ok(())
    }
}

/// At most one pick per color; `picks[i]` indexes into color `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColorfulSelection {
    picks: Vec<Option<usize>>,
}

impl ColorfulSelection {
    pub fn new(picks: Vec<Option<usize>>) -> Self {
        ColorfulSelection { picks }
    }

    pub fn full(picks: Vec<usize>) -> Self {
        ColorfulSelection {
            picks: picks.into_iter().map(Some).collect(),
        }
    }

    pub fn picks(&self) -> &[Option<usize>] {
        &self.picks
    }

    pub fn pick(&self, color: usize) -> Option<usize> {
        self.picks.get(color).copied().flatten()
    }

    pub fn len(&self) -> usize {
        self.picks.iter().filter(|p| p.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_full(&self) -> bool {
        self.picks.iter().all(Option::is_some)
    }

    /// `(color, index)` pairs of the chosen points.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.picks
            .iter()
            .enumerate()
            .filter_map(|(c, p)| p.map(|i| (c, i)))
    }

    /// Whether the selection indexes valid points of `config`.
    pub fn fits(&self, config: &PointConfiguration) -> bool {
        self.picks.len() == config.num_colors()
            && self
                .entries()
                .all(|(c, i)| i < config.color(c).len())
    }

    pub fn points<'a>(&self, config: &'a PointConfiguration) -> Vec<&'a Point> {
        self.entries().map(|(c, i)| config.point(c, i)).collect()
    }

    pub fn owned_points(&self, config: &PointConfiguration) -> Vec<Point> {
        self.entries().map(|(c, i)| config.point(c, i).clone()).collect()
    }
}

/// Weights `λ` with `λ >= 0`, `Σλ = 1` and `Σ λ_i x_i = 0`, aligned with a
/// point list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConvexCertificate {
    #[serde(with = "rational::serde_vec")]
    pub weights: Vec<Rational>,
}

impl ConvexCertificate {
    pub fn verify(&self, points: &[&Point]) -> bool {
        if points.is_empty() || self.weights.len() != points.len() {
            return false;
        }
        let dim = points[0].dim();
        if self.weights.iter().any(Signed::is_negative) || points.iter().any(|p| p.dim() != dim) {
            return false;
        }
        // integer weights W = L·w share one denominator L
        let l = rational::common_denominator(&self.weights);
        let w: Vec<BigInt> = self
            .weights
            .iter()
            .map(|r| r.numer() * (&l / r.denom()))
            .collect();
        if w.iter().sum::<BigInt>() != l {
            return false;
        }
        (0..dim).all(|k| {
            let m = rational::common_denominator(points.iter().map(|p| &p.0[k]));
            points
                .iter()
                .zip(&w)
                .map(|(p, wi)| p.0[k].numer() * (&m / p.0[k].denom()) * wi)
                .sum::<BigInt>()
                .is_zero()
        })
    }
}

/// Normal `y` with `y·x > 0` for every refuted point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FarkasCertificate {
    #[serde(with = "rational::serde_vec")]
    pub normal: Vec<Rational>,
}

impl FarkasCertificate {
    pub fn verify(&self, points: &[&Point]) -> bool {
        !points.is_empty()
            && points
                .iter()
                .all(|p| p.dim() == self.normal.len() && dot(&self.normal, &p.0).is_positive())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Dependence {
    Dependent(ConvexCertificate),
    Independent(FarkasCertificate),
}

impl Dependence {
    pub fn is_dependent(&self) -> bool {
        matches!(self, Dependence::Dependent(_))
    }

    pub fn verify(&self, points: &[&Point]) -> bool {
        match self {
            Dependence::Dependent(c) => c.verify(points),
            Dependence::Independent(c) => c.verify(points),
        }
    }
}

fn check_dims(points: &[&Point]) -> Result<usize> {
    let Some(first) = points.first() else {
        return Err(Error::DimensionOrEmpty("empty point set".into()));
    };
    let d = first.dim();
    if points.iter().any(|p| p.dim() != d) {
        return Err(Error::DimensionOrEmpty("points have different lengths".into()));
    }
    Ok(d)
}

/// Decides whether `0 ∈ conv(points)`.
pub fn is_positively_dependent<P: AsRef<Point>>(points: &[P]) -> Result<Dependence> {
    let refs: Vec<&Point> = points.iter().map(AsRef::as_ref).collect();
    positively_dependent_refs(&refs)
}

impl AsRef<Point> for Point {
    fn as_ref(&self) -> &Point {
        self
    }
}

pub(crate) fn positively_dependent_refs(points: &[&Point]) -> Result<Dependence> {
    let d = check_dims(points)?;
    let n = points.len();
    // lifted system [x_1 .. x_n; 1 .. 1] λ = e_{d+1}
    let lifted: Vec<Vec<Rational>> = points.iter().map(|p| p.lifted()).collect();

    if n == d + 1 {
        if let Some(answer) = square_dependence(&lifted) {
            return Ok(answer);
        }
    }

    let a: Vec<Vec<Rational>> = (0..=d)
        .map(|k| lifted.iter().map(|col| col[k].clone()).collect())
        .collect();
    let mut b = vec![Rational::zero(); d + 1];
    b[d] = Rational::one();
    match lp_feasibility(&a, &b) {
        LpOutcome::Feasible(weights) => Ok(Dependence::Dependent(ConvexCertificate { weights })),
        LpOutcome::Infeasible(y) => Ok(Dependence::Independent(farkas_from_dual(&y, d))),
    }
}

// y·(x,1) >= 0 for all x and y_{d+1} < 0 gives y[..d]·x >= -y_{d+1} > 0
fn farkas_from_dual(y: &[Rational], d: usize) -> FarkasCertificate {
    FarkasCertificate {
        normal: y[..d].to_vec(),
    }
}

// With d+1 affinely independent points the barycentric coordinates of 0 are
// unique; a negative coordinate j yields row j of the inverse as a dual.
fn square_dependence(lifted: &[Vec<Rational>]) -> Option<Dependence> {
    let n = lifted.len();
    let d = n - 1;
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|k| lifted.iter().map(|col| col[k].clone()).collect())
        .collect();
    let mut e = vec![Rational::zero(); n];
    e[d] = Rational::one();
    let (nums, det) = linalg::solve_cramer(&rows, &e)?;
    let negative = |v: &BigInt| !v.is_zero() && v.is_negative() != det.is_negative();
    match nums.iter().position(negative) {
        None => {
            let weights = nums.into_iter().map(|v| Rational::new(v, det.clone())).collect();
            Some(Dependence::Dependent(ConvexCertificate { weights }))
        }
        Some(j) => {
            // row j of the inverse solves the transposed system with e_j
            let transposed: Vec<Vec<Rational>> = lifted.to_vec();
            let mut ej = vec![Rational::zero(); n];
            ej[j] = Rational::one();
            let row = linalg::solve(&transposed, &ej)?;
            Some(Dependence::Independent(farkas_from_dual(&row, d)))
        }
    }
}

/// Whether `0 ∈ conv(points)`, without building a certificate when the
/// points are `d+1` affinely independent ones.
pub(crate) fn contains_origin(points: &[Point]) -> Result<bool> {
    let refs: Vec<&Point> = points.iter().collect();
    let d = check_dims(&refs)?;
    if points.len() == d + 1 {
        let rows: Vec<Vec<Rational>> = (0..=d)
            .map(|k| points.iter().map(|p| p.lifted()[k].clone()).collect())
            .collect();
        let mut e = vec![Rational::zero(); d + 1];
        e[d] = Rational::one();
        if let Some((nums, det)) = linalg::solve_cramer(&rows, &e) {
            return Ok(nums.iter().all(|v| v.is_zero() || v.is_negative() == det.is_negative()));
        }
    }
    positively_dependent_refs(&refs).map(|r| r.is_dependent())
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConeMembership {
    /// `μ >= 0` with `Σ μ_i t_i = p`.
    Member(Vec<Rational>),
    /// `y` with `y·t >= 0` for all `t` and `y·p < 0`.
    Separated(Vec<Rational>),
}

impl ConeMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, ConeMembership::Member(_))
    }

    pub fn verify(&self, points: &[&Point], p: &Point) -> bool {
        match self {
            ConeMembership::Member(mu) => {
                mu.len() == points.len()
                    && mu.iter().all(|m| !m.is_negative())
                    && (0..p.dim()).all(|k| {
                        points.iter().zip(mu).map(|(t, m)| &t.0[k] * m).sum::<Rational>()
                            == p.0[k]
                    })
            }
            ConeMembership::Separated(y) => {
                y.len() == p.dim()
                    && points.iter().all(|t| !dot(y, &t.0).is_negative())
                    && dot(y, &p.0).is_negative()
            }
        }
    }
}

/// Decides `p ∈ cone(points)`. The empty cone is `{0}`.
pub fn cone_member<P: AsRef<Point>>(points: &[P], p: &Point) -> Result<ConeMembership> {
    let refs: Vec<&Point> = points.iter().map(AsRef::as_ref).collect();
    cone_member_refs(&refs, p)
}

pub(crate) fn cone_member_refs(points: &[&Point], p: &Point) -> Result<ConeMembership> {
    let d = p.dim();
    if points.iter().any(|t| t.dim() != d) {
        return Err(Error::DimensionOrEmpty("cone generators and target differ in length".into()));
    }
    if points.is_empty() {
        return Ok(if p.is_origin() {
            ConeMembership::Member(Vec::new())
        } else {
            ConeMembership::Separated(p.0.iter().map(|v| -v.clone()).collect())
        });
    }
    let a: Vec<Vec<Rational>> = (0..d)
        .map(|k| points.iter().map(|t| t.0[k].clone()).collect())
        .collect();
    Ok(match lp_feasibility(&a, &p.0) {
        LpOutcome::Feasible(mu) => ConeMembership::Member(mu),
        LpOutcome::Infeasible(y) => ConeMembership::Separated(y),
    })
}

/// Every full colorful selection (one pick per color) whose points are
/// positively dependent, in lexicographic order of picks.
pub fn enumerate_pdcs(config: &PointConfiguration, budget: u64) -> Result<Vec<ColorfulSelection>> {
    let total = config.selection_count();
    if total > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    let mut found = Vec::new();
    for_each_full_selection(config, |sel| {
        let pts = sel.points(config);
        if positively_dependent_refs(&pts)?.is_dependent() {
            found.push(sel.clone());
        }
        Ok(())
    })?;
    Ok(found)
}

pub(crate) fn for_each_full_selection(
    config: &PointConfiguration,
    mut f: impl FnMut(&ColorfulSelection) -> Result<()>,
) -> Result<()> {
    let sizes: Vec<usize> = config.colors().iter().map(Vec::len).collect();
    let mut idx = vec![0usize; sizes.len()];
    loop {
        f(&ColorfulSelection::full(idx.clone()))?;
        // odometer increment, last color fastest
        let mut c = sizes.len();
        loop {
            if c == 0 {
                return Ok(());
            }
            c -= 1;
            idx[c] += 1;
            if idx[c] < sizes[c] {
                break;
            }
            idx[c] = 0;
        }
    }
}

#[derive(Debug, Clone)]
pub struct GeneralPositionOptions {
    /// Treat the origin as one more point.
    pub include_origin: bool,
    /// Enumerate all `(d+1)`-subsets when their number is at most this.
    pub exhaustive_budget: u64,
    /// Random subsets checked when the exhaustive budget is exceeded.
    pub samples: usize,
    pub seed: u64,
    /// Force the exhaustive check regardless of the budget.
    pub full: bool,
}

impl Default for GeneralPositionOptions {
    fn default() -> Self {
        GeneralPositionOptions {
            include_origin: false,
            exhaustive_budget: 200_000,
            samples: 2_000,
            seed: 0x5eed,
            full: false,
        }
    }
}

impl GeneralPositionOptions {
    pub fn with_origin() -> Self {
        GeneralPositionOptions {
            include_origin: true,
            ..Default::default()
        }
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
        if r > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    r as u64
}

/// No `d+1` of the points lie in a common affine hyperplane.
///
/// Small inputs are decided exactly over all `(d+1)`-subsets. Beyond
/// `exhaustive_budget` subsets, duplicates are still ruled out exactly but the
/// hyperplane condition is only checked on `samples` random subsets, so a
/// `true` answer is probabilistic unless `full` is set. Each subset is screened
/// by a determinant modulo a 61-bit prime and confirmed exactly when that
/// residue vanishes, so a `false` answer is always exact.
pub fn is_general_position(config: &PointConfiguration, opts: &GeneralPositionOptions) -> bool {
    let d = config.dimension();
    let mut pts: Vec<&Point> = config.iter_points().map(|(_, _, p)| p).collect();
    let origin = Point::origin(d);
    if opts.include_origin {
        pts.push(&origin);
    }
    let n = pts.len();
    let k = d + 1;
    if n < k {
        return true;
    }
    let mut seen = HashSet::new();
    if !pts.iter().all(|p| seen.insert(*p)) {
        return false;
    }
    let lifted: Vec<Vec<Rational>> = pts.iter().map(|p| p.lifted()).collect();
    // scaling a column by a positive integer leaves singularity unchanged
    let residues: Vec<Vec<u64>> = linalg::integer_columns(&lifted)
        .iter()
        .map(|col| col.iter().map(linalg::bigint_mod).collect())
        .collect();
    let degenerate = |subset: &[usize]| -> bool {
        let r: Vec<Vec<u64>> = subset.iter().map(|&i| residues[i].clone()).collect();
        if linalg::det_mod(r) != 0 {
            return false;
        }
        let cols: Vec<Vec<Rational>> = subset.iter().map(|&i| lifted[i].clone()).collect();
        linalg::determinant(&cols).is_zero()
    };

    if opts.full || binomial(n, k) <= opts.exhaustive_budget {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            if degenerate(&idx) {
                return false;
            }
            // next k-combination in lexicographic order
            let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
                return true;
            };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    let mut rng = ChaCha20Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.samples {
        let mut subset = sample(&mut rng, n, k).into_vec();
        subset.sort_unstable();
        if degenerate(&subset) {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone)]
pub struct PerturbOptions {
    /// Keep every positively dependent color positively dependent.
    pub preserve_dependence: bool,
    pub general_position: GeneralPositionOptions,
    pub max_halvings: usize,
}

impl Default for PerturbOptions {
    fn default() -> Self {
        PerturbOptions {
            preserve_dependence: true,
            general_position: GeneralPositionOptions::default(),
            max_halvings: 64,
        }
    }
}

/// Moves point `j` (1-based, color-major) by `ε^j · (1, j, j², …)`, halving
/// `ε` until the result is in general position.
///
/// With `preserve_dependence`, every color that surrounds the origin is then
/// translated so that the origin keeps the weights `(1-ε)μ + ε/n` with
/// respect to the moved points, `μ` being its original convex weights. The
/// weights are all positive, so the color stays dependent even when the
/// origin started on the boundary of its hull.
pub fn perturb(
    config: &PointConfiguration,
    epsilon: &Rational,
    opts: &PerturbOptions,
) -> Result<PointConfiguration> {
    if !epsilon.is_positive() {
        return Err(Error::InvalidInput("perturbation magnitude must be positive".into()));
    }
    let weights: Vec<Option<Vec<Rational>>> = if opts.preserve_dependence {
        config
            .colors()
            .iter()
            .map(|c| {
                is_positively_dependent(c).map(|r| match r {
                    Dependence::Dependent(cert) => Some(cert.weights),
                    Dependence::Independent(_) => None,
                })
            })
            .collect::<Result<_>>()?
    } else {
        vec![None; config.num_colors()]
    };
    let mut eps = epsilon.clone().min(rational::frac(1, 2));
    let half = rational::frac(1, 2);
    for _ in 0..=opts.max_halvings {
        let mut moved = shift_by_powers(config, &eps);
        for (pts, mu) in moved.colors.iter_mut().zip(&weights) {
            if let Some(mu) = mu {
                recenter(pts, mu, &eps);
            }
        }
        if is_general_position(&moved, &opts.general_position) {
            return Ok(moved);
        }
        eps *= &half;
    }
    Err(Error::PerturbationFailed {
        halvings: opts.max_halvings,
    })
}

fn recenter(pts: &mut [Point], mu: &[Rational], eps: &Rational) {
    let n = rational::int(pts.len() as i64);
    let keep = Rational::one() - eps;
    let spread = eps / n;
    let d = pts[0].dim();
    let center: Vec<Rational> = (0..d)
        .map(|k| {
            pts.iter()
                .zip(mu)
                .map(|(p, m)| &p.0[k] * (&keep * m + &spread))
                .sum()
        })
        .collect();
    for p in pts.iter_mut() {
        for (v, c) in p.0.iter_mut().zip(&center) {
            *v -= c;
        }
    }
}

fn shift_by_powers(config: &PointConfiguration, eps: &Rational) -> PointConfiguration {
    let d = config.dimension();
    let mut power = Rational::one();
    let mut j: i64 = 0;
    let colors = config
        .colors()
        .iter()
        .map(|pts| {
            pts.iter()
                .map(|p| {
                    j += 1;
                    power *= eps;
                    let mut dir = Rational::one();
                    let coords = (0..d)
                        .map(|k| {
                            let v = &p.0[k] + &power * &dir;
                            dir *= rational::int(j);
                            v
                        })
                        .collect();
                    Point(coords)
                })
                .collect()
        })
        .collect();
    PointConfiguration {
        dimension: d,
        colors,
        target: config.target.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn pts(raw: &[&[i64]]) -> Vec<Point> {
        raw.iter().map(|c| Point::from_ints(c)).collect()
    }

    #[test]
    fn triangle_around_origin() {
        let p = pts(&[&[1, 0], &[-1, 1], &[-1, -1]]);
        let r = is_positively_dependent(&p).unwrap();
        let refs: Vec<&Point> = p.iter().collect();
        assert!(r.verify(&refs));
        match r {
            Dependence::Dependent(c) => {
                assert_eq!(c.weights, vec![frac(1, 2), frac(1, 4), frac(1, 4)])
            }
            _ => panic!("expected dependence"),
        }
    }

    #[test]
    fn open_quadrant_is_refuted() {
        let p = pts(&[&[1, 0], &[0, 1]]);
        let r = is_positively_dependent(&p).unwrap();
        let refs: Vec<&Point> = p.iter().collect();
        assert!(!r.is_dependent());
        assert!(r.verify(&refs));
        let reference = FarkasCertificate {
            normal: vec![int(1), int(1)],
        };
        assert!(reference.verify(&refs));
    }

    #[test]
    fn one_dimensional_pair() {
        let p = pts(&[&[2], &[-3]]);
        match is_positively_dependent(&p).unwrap() {
            Dependence::Dependent(c) => assert_eq!(c.weights, vec![frac(3, 5), frac(2, 5)]),
            _ => panic!("expected dependence"),
        }
    }

    #[test]
    fn empty_and_ragged_inputs_error() {
        let empty: Vec<Point> = Vec::new();
        assert!(matches!(
            is_positively_dependent(&empty),
            Err(Error::DimensionOrEmpty(_))
        ));
        let ragged = vec![Point::from_ints(&[1]), Point::from_ints(&[1, 2])];
        assert!(is_positively_dependent(&ragged).is_err());
    }

    #[test]
    fn origin_itself_is_dependent() {
        let p = pts(&[&[0, 0], &[5, 5]]);
        let r = is_positively_dependent(&p).unwrap();
        assert!(r.is_dependent());
        assert!(r.verify(&p.iter().collect::<Vec<_>>()));
    }

    #[test]
    fn cone_membership_examples() {
        let t = pts(&[&[1, 0], &[0, 1]]);
        let r = cone_member(&t, &Point::from_ints(&[2, 3])).unwrap();
        assert_eq!(r, ConeMembership::Member(vec![int(2), int(3)]));

        let t = pts(&[&[1, 0]]);
        let p = Point::from_ints(&[-1, 0]);
        let r = cone_member(&t, &p).unwrap();
        assert!(!r.is_member());
        assert!(r.verify(&t.iter().collect::<Vec<_>>(), &p));
        assert!(ConeMembership::Separated(vec![int(1), int(0)])
            .verify(&t.iter().collect::<Vec<_>>(), &p));

        let t = pts(&[&[1, 1], &[1, -1]]);
        let r = cone_member(&t, &Point::from_ints(&[1, 0])).unwrap();
        assert_eq!(r, ConeMembership::Member(vec![frac(1, 2), frac(1, 2)]));
    }

    #[test]
    fn enumerate_one_dimensional_pairs() {
        let cfg = PointConfiguration::new(
            1,
            vec![pts(&[&[1], &[-1]]), pts(&[&[2], &[-3]])],
        )
        .unwrap();
        let found = enumerate_pdcs(&cfg, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert_eq!(
            found,
            vec![ColorfulSelection::full(vec![0, 1]), ColorfulSelection::full(vec![1, 0])]
        );
    }

    #[test]
    fn enumerate_two_dimensional_is_consistent() {
        let cfg = PointConfiguration::new(
            2,
            vec![
                pts(&[&[1, 0], &[0, 1]]),
                pts(&[&[-1, -1], &[1, 1]]),
                pts(&[&[1, -1], &[-1, 1]]),
            ],
        )
        .unwrap();
        let found = enumerate_pdcs(&cfg, DEFAULT_ENUMERATION_BUDGET).unwrap();
        let mut count = 0;
        for_each_full_selection(&cfg, |sel| {
            let p = sel.points(&cfg);
            let dep = positively_dependent_refs(&p)?;
            assert!(dep.verify(&p));
            assert_eq!(dep.is_dependent(), found.contains(sel));
            count += 1;
            Ok(())
        })
        .unwrap();
        assert_eq!(count, 8);
        assert!(!found.is_empty());
    }

    #[test]
    fn enumerate_halfspace_and_budget() {
        let cfg = PointConfiguration::new(
            2,
            vec![pts(&[&[1, 0], &[2, 5]]), pts(&[&[3, -1], &[1, 1]])],
        )
        .unwrap();
        assert!(enumerate_pdcs(&cfg, 10).unwrap().is_empty());
        assert!(matches!(
            enumerate_pdcs(&cfg, 3),
            Err(Error::BudgetExceeded { budget: 3 })
        ));
    }

    #[test]
    fn general_position_examples() {
        let line = PointConfiguration::new(1, vec![pts(&[&[1], &[2], &[3]])]).unwrap();
        assert!(is_general_position(&line, &Default::default()));
        let dup = PointConfiguration::new(1, vec![pts(&[&[1], &[2], &[1]])]).unwrap();
        assert!(!is_general_position(&dup, &Default::default()));

        let collinear =
            PointConfiguration::new(2, vec![pts(&[&[0, 0], &[1, 1], &[2, 2]])]).unwrap();
        assert!(!is_general_position(&collinear, &Default::default()));

        let good = PointConfiguration::new(
            2,
            vec![pts(&[&[1, 0], &[0, 1], &[-1, -1], &[2, 1]])],
        )
        .unwrap();
        assert!(is_general_position(&good, &Default::default()));
        // against an independent triple loop when the origin joins the set
        let with_origin = is_general_position(&good, &GeneralPositionOptions::with_origin());
        let mut all = good.color(0).to_vec();
        all.push(Point::origin(2));
        let brute = (0..all.len()).all(|a| {
            (a + 1..all.len()).all(|b| {
                (b + 1..all.len()).all(|c| {
                    let m = vec![all[a].lifted(), all[b].lifted(), all[c].lifted()];
                    !linalg::determinant(&m).is_zero()
                })
            })
        });
        assert_eq!(with_origin, brute);
    }

    #[test]
    fn sampled_general_position_finds_duplicates() {
        let mut raw: Vec<Point> = (0..40).map(|i| Point::from_ints(&[i, i * i, i * i * i])).collect();
        raw.push(Point::from_ints(&[3, 9, 27]));
        let cfg = PointConfiguration::new(3, vec![raw]).unwrap();
        let opts = GeneralPositionOptions {
            exhaustive_budget: 10,
            ..Default::default()
        };
        assert!(!is_general_position(&cfg, &opts));
    }

    #[test]
    fn perturb_breaks_collinearity() {
        let cfg = PointConfiguration::new(2, vec![pts(&[&[0, 0], &[1, 1], &[2, 2]])]).unwrap();
        let opts = PerturbOptions {
            preserve_dependence: false,
            ..Default::default()
        };
        let out = perturb(&cfg, &frac(1, 10), &opts).unwrap();
        assert!(is_general_position(&out, &Default::default()));
        let p = out.color(0);
        let m: Vec<Vec<Rational>> = p.iter().map(|q| q.lifted()).collect();
        assert!(!linalg::determinant(&m).is_zero());
    }

    #[test]
    fn perturb_pulls_boundary_origin_inside() {
        // the origin sits on the segment (0,1)-(0,-1)
        let cfg = PointConfiguration::new(2, vec![pts(&[&[0, 1], &[0, -1], &[2, 0]])]).unwrap();
        let opts = PerturbOptions {
            general_position: GeneralPositionOptions::with_origin(),
            ..Default::default()
        };
        let out = perturb(&cfg, &frac(1, 8), &opts).unwrap();
        assert!(is_general_position(&out, &GeneralPositionOptions::with_origin()));
        match is_positively_dependent(out.color(0)).unwrap() {
            Dependence::Dependent(c) => assert!(c.weights.iter().all(|w| w.is_positive())),
            Dependence::Independent(_) => panic!("dependence lost"),
        }
    }

    #[test]
    fn perturb_keeps_dependent_colors() {
        let cfg = PointConfiguration::new(
            2,
            vec![
                pts(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]),
                pts(&[&[2, 2], &[-2, -2], &[1, -1]]),
            ],
        )
        .unwrap();
        let out = perturb(&cfg, &frac(1, 4), &PerturbOptions::default()).unwrap();
        assert!(is_general_position(&out, &Default::default()));
        for c in out.colors() {
            assert!(is_positively_dependent(c).unwrap().is_dependent());
        }
        assert!(perturb(&cfg, &int(0), &PerturbOptions::default()).is_err());
    }

    #[test]
    fn configuration_validation() {
        assert!(PointConfiguration::new(2, vec![vec![]]).is_err());
        assert!(PointConfiguration::new(2, vec![pts(&[&[1]])]).is_err());
        assert!(PointConfiguration::new(0, vec![pts(&[&[]])]).is_err());
        assert!(PointConfiguration::new(2, vec![]).is_err());
    }
}
