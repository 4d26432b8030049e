//! Bimatrix games as colorful cone problems.
//!
//! A game `(A, B)` with positive entries becomes `m+n` pairs of columns of
//!
//! ```text
//! M = [ A  I_m  0   0  ]
//!     [ 0  0    I_n Bᵀ ]
//! ```
//!
//! with target `u = (1, …, 1)`. The slack columns give one colorful cone
//! containing `u`; any other one decomposes `u` into complementary solutions
//! of `[A, I_m]x = 1` and `[I_n, Bᵀ]x = 1`, which yields an equilibrium.
//! Another colorful cone is found with one call per pair to a decision
//! oracle for colorful linear programming.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    cone_member, is_positively_dependent, ColorfulSelection, ConeMembership, Dependence, Point,
    PointConfiguration,
};
use crate::linalg;
use crate::rational::{self, Rational};

/// Default node budget of [`clp_decide`].
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGame")]
pub struct BimatrixGame {
    #[serde(rename = "A", with = "rational::serde_matrix")]
    a: Vec<Vec<Rational>>,
    #[serde(rename = "B", with = "rational::serde_matrix")]
    b: Vec<Vec<Rational>>,
}

#[derive(Deserialize)]
struct RawGame {
    #[serde(rename = "A", with = "rational::serde_matrix")]
    a: Vec<Vec<Rational>>,
    #[serde(rename = "B", with = "rational::serde_matrix")]
    b: Vec<Vec<Rational>>,
}

impl TryFrom<RawGame> for BimatrixGame {
    type Error = Error;

    fn try_from(raw: RawGame) -> Result<Self> {
        BimatrixGame::new(raw.a, raw.b)
    }
}

impl BimatrixGame {
    pub fn new(a: Vec<Vec<Rational>>, b: Vec<Vec<Rational>>) -> Result<Self> {
        let m = a.len();
        let n = a.first().map_or(0, Vec::len);
        if m == 0 || n == 0 {
            return Err(Error::InvalidInput("games need at least one strategy per player".into()));
        }
        let rect = |x: &[Vec<Rational>]| x.len() == m && x.iter().all(|r| r.len() == n);
        if !rect(&a) || !rect(&b) {
            return Err(Error::InvalidInput("payoff matrices must be m x n of equal shape".into()));
        }
        Ok(BimatrixGame { a, b })
    }

    pub fn from_ints(a: &[&[i64]], b: &[&[i64]]) -> Result<Self> {
        let conv = |x: &[&[i64]]| -> Vec<Vec<Rational>> {
            x.iter().map(|r| r.iter().map(|&v| rational::int(v)).collect()).collect()
        };
        BimatrixGame::new(conv(a), conv(b))
    }

    pub fn a(&self) -> &[Vec<Rational>] {
        &self.a
    }

    pub fn b(&self) -> &[Vec<Rational>] {
        &self.b
    }

    /// Number of row strategies.
    pub fn m(&self) -> usize {
        self.a.len()
    }

    /// Number of column strategies.
    pub fn n(&self) -> usize {
        self.a[0].len()
    }

    fn entries(&self) -> impl Iterator<Item = &Rational> {
        self.a.iter().chain(&self.b).flatten()
    }

    /// `yᵀ A z` and `yᵀ B z`.
    pub fn payoffs(&self, p: &MixedProfile) -> (Rational, Rational) {
        let bil = |x: &[Vec<Rational>]| -> Rational {
            x.iter()
                .zip(&p.y)
                .map(|(row, yi)| yi * rational::dot(row, &p.z))
                .sum()
        };
        (bil(&self.a), bil(&self.b))
    }

    /// Exact equilibrium test: no pure deviation of either player pays more.
    pub fn is_equilibrium(&self, p: &MixedProfile) -> bool {
        if !p.is_valid() || p.y.len() != self.m() || p.z.len() != self.n() {
            return false;
        }
        let (va, vb) = self.payoffs(p);
        let rows_ok = self.a.iter().all(|row| rational::dot(row, &p.z) <= va);
        let cols_ok = (0..self.n()).all(|j| {
            let s: Rational = self.b.iter().zip(&p.y).map(|(row, yi)| &row[j] * yi).sum();
            s <= vb
        });
        rows_ok && cols_ok
    }
}

/// Mixed strategies `y ∈ Δ^m` of the row player and `z ∈ Δ^n` of the column
/// player.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MixedProfile {
    #[serde(with = "rational::serde_vec")]
    pub y: Vec<Rational>,
    #[serde(with = "rational::serde_vec")]
    pub z: Vec<Rational>,
}

impl MixedProfile {
    pub fn new(y: Vec<Rational>, z: Vec<Rational>) -> Self {
        MixedProfile { y, z }
    }

    /// Both vectors are nonnegative and sum to one.
    pub fn is_valid(&self) -> bool {
        let simplex = |v: &[Rational]| {
            !v.is_empty() && v.iter().all(rational::is_nonnegative) && v.iter().sum::<Rational>().is_one()
        };
        simplex(&self.y) && simplex(&self.z)
    }
}

/// Serialized equilibrium together with the outcome of its exact check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumRecord {
    #[serde(flatten)]
    pub profile: MixedProfile,
    pub verified: bool,
}

/// Solutions `x_A` of `[A, I_m]x = 1` and `x_B` of `[I_n, Bᵀ]x = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplementaryPair {
    pub xa: Vec<Rational>,
    pub xb: Vec<Rational>,
}

impl ComplementaryPair {
    /// Checks both systems, nonnegativity and `x_A · x_B = 0` exactly.
    pub fn verify(&self, game: &BimatrixGame) -> bool {
        let (m, n) = (game.m(), game.n());
        if self.xa.len() != n + m || self.xb.len() != n + m {
            return false;
        }
        let nonneg = self.xa.iter().chain(&self.xb).all(rational::is_nonnegative);
        let eq_a = (0..m).all(|i| (rational::dot(&game.a[i], &self.xa[..n]) + &self.xa[n + i]).is_one());
        let eq_b = (0..n).all(|j| {
            let s: Rational = (0..m).map(|i| &game.b[i][j] * &self.xb[n + i]).sum();
            (s + &self.xb[j]).is_one()
        });
        nonneg && eq_a && eq_b && rational::dot(&self.xa, &self.xb).is_zero()
    }

    /// Normalized column strategy `x_A[..n]` and row strategy `x_B[n..]`.
    pub fn profile(&self, n: usize) -> Option<MixedProfile> {
        let z = normalize(&self.xa[..n])?;
        let y = normalize(&self.xb[n..])?;
        Some(MixedProfile { y, z })
    }
}

fn normalize(v: &[Rational]) -> Option<Vec<Rational>> {
    let s: Rational = v.iter().sum();
    (!s.is_zero()).then(|| v.iter().map(|x| x / &s).collect())
}

/// Input of the "another colorful set" problem: pairs of points, a colorful
/// set `T` that is positively dependent (or, with a target `p`, has
/// `p ∈ cone(T)`), and the weights certifying it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFacs")]
pub struct FacsInstance {
    #[serde(flatten)]
    pub config: PointConfiguration,
    pub given: ColorfulSelection,
    #[serde(with = "rational::serde_vec")]
    pub weights: Vec<Rational>,
}

/// Stored weights are recomputed on load.
#[derive(Deserialize)]
struct RawFacs {
    #[serde(flatten)]
    config: PointConfiguration,
    given: ColorfulSelection,
}

impl TryFrom<RawFacs> for FacsInstance {
    type Error = Error;
    fn try_from(raw: RawFacs) -> Result<Self> {
        FacsInstance::new(raw.config, raw.given)
    }
}

impl FacsInstance {
    /// Validates the pair structure and the given selection exactly. In the
    /// conic variant `0 ∉ conv({p} ∪ ⋃S_i)` is required as well.
    pub fn new(config: PointConfiguration, given: ColorfulSelection) -> Result<Self> {
        if config.colors().iter().any(|c| c.len() != 2) {
            return Err(Error::InvalidInput("every color must be a pair of points".into()));
        }
        if !given.fits(&config) || !given.is_full() {
            return Err(Error::InvalidInput("given set must pick one point of every pair".into()));
        }
        let pts = given.points(&config);
        let weights = match config.target() {
            Some(p) => {
                let mut all: Vec<&Point> = config.iter_points().map(|(_, _, q)| q).collect();
                all.push(p);
                if is_positively_dependent(&all)?.is_dependent() {
                    return Err(Error::InvalidInput(
                        "origin lies in the hull of the points and the target".into(),
                    ));
                }
                match cone_member(&pts, p)? {
                    ConeMembership::Member(mu) => mu,
                    ConeMembership::Separated(_) => {
                        return Err(Error::VerificationFailed("target not in the cone of the given set".into()))
                    }
                }
            }
            None => match is_positively_dependent(&pts)? {
                Dependence::Dependent(c) => c.weights,
                Dependence::Independent(_) => {
                    return Err(Error::VerificationFailed("given set is not positively dependent".into()))
                }
            },
        };
        Ok(FacsInstance {
            config,
            given,
            weights,
        })
    }

    pub fn num_pairs(&self) -> usize {
        self.config.num_colors()
    }
}

/// Adds `1 - min` to every entry of both matrices when some entry is `<= 0`.
pub fn positivize(game: &BimatrixGame) -> BimatrixGame {
    let min = game.entries().min().cloned().expect("games are nonempty");
    if min.is_positive() {
        return game.clone();
    }
    let shift = Rational::one() - min;
    let add = |x: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
        x.iter().map(|r| r.iter().map(|v| v + &shift).collect()).collect()
    };
    BimatrixGame {
        a: add(&game.a),
        b: add(&game.b),
    }
}

/// Column `j` (0-based) of `M`.
fn column(game: &BimatrixGame, j: usize) -> Point {
    let (m, n) = (game.m(), game.n());
    let mut c = vec![Rational::zero(); m + n];
    if j < n {
        for i in 0..m {
            c[i] = game.a[i][j].clone();
        }
    } else if j < n + m {
        c[j - n] = Rational::one();
    } else if j < 2 * n + m {
        c[m + j - n - m] = Rational::one();
    } else {
        let i = j - 2 * n - m;
        for k in 0..n {
            c[m + k] = game.b[i][k].clone();
        }
    }
    Point::new(c)
}

/// The pairs `{M_i, M_{m+n+i}}` with target `u = 1` and the slack columns as
/// given set. Point 0 of pair `i` is `M_i`, point 1 is `M_{m+n+i}`.
pub fn game_to_config(game: &BimatrixGame) -> Result<FacsInstance> {
    if game.entries().any(|v| !v.is_positive()) {
        return Err(Error::NonPositiveEntries);
    }
    let (m, n) = (game.m(), game.n());
    let k = m + n;
    let colors = (0..k).map(|i| vec![column(game, i), column(game, k + i)]).collect();
    let u = Point::new(vec![Rational::one(); k]);
    let config = PointConfiguration::with_target(k, colors, Some(u))?;
    // pairs 1..n give their I_n column, pairs n+1..n+m their I_m column
    let given = ColorfulSelection::full((0..k).map(|i| usize::from(i < n)).collect());
    FacsInstance::new(config, given)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClpOptions {
    /// Prune a partial selection when the remaining colors cannot complete it.
    pub prune: bool,
    /// Maximum number of search nodes.
    pub budget: u64,
}

impl Default for ClpOptions {
    fn default() -> Self {
        ClpOptions {
            prune: true,
            budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl ClpOptions {
    pub fn exhaustive() -> Self {
        ClpOptions {
            prune: false,
            ..Default::default()
        }
    }
}

/// Answer of the decision oracle; a yes comes with a selection and weights
/// that verify exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct ClpAnswer {
    pub witness: Option<(ColorfulSelection, Vec<Rational>)>,
    /// Search nodes visited.
    pub nodes: u64,
    /// Subtrees cut by the relaxation.
    pub pruned: u64,
}

impl ClpAnswer {
    pub fn is_yes(&self) -> bool {
        self.witness.is_some()
    }
}

/// Weights for `0 ∈ conv(points)`, or for `p ∈ cone(points)` when a target
/// is given.
fn feasible(points: &[&Point], target: Option<&Point>) -> Result<Option<Vec<Rational>>> {
    if points.is_empty() {
        return Ok(None);
    }
    match target {
        Some(p) => Ok(match cone_member(points, p)? {
            ConeMembership::Member(mu) => Some(mu),
            ConeMembership::Separated(_) => None,
        }),
        None => Ok(match is_positively_dependent(points)? {
            Dependence::Dependent(c) => Some(c.weights),
            Dependence::Independent(_) => None,
        }),
    }
}

/// Decides whether some colorful set is positively dependent, or contains the
/// configuration's target in its cone.
///
/// Supersets of a solution are solutions, so the search runs over one point
/// per color, colors in increasing order. With pruning, a node is cut when
/// its picks together with every point of the undecided colors are already
/// infeasible.
pub fn clp_decide(config: &PointConfiguration, opts: &ClpOptions) -> Result<ClpAnswer> {
    let mut search = Search {
        config,
        opts,
        picks: Vec::with_capacity(config.num_colors()),
        nodes: 0,
        pruned: 0,
    };
    let witness = search.descend()?;
    Ok(ClpAnswer {
        witness,
        nodes: search.nodes,
        pruned: search.pruned,
    })
}

struct Search<'a> {
    config: &'a PointConfiguration,
    opts: &'a ClpOptions,
    picks: Vec<usize>,
    nodes: u64,
    pruned: u64,
}

impl Search<'_> {
    fn descend(&mut self) -> Result<Option<(ColorfulSelection, Vec<Rational>)>> {
        self.nodes += 1;
        if self.nodes > self.opts.budget {
            return Err(Error::BudgetExceeded {
                budget: self.opts.budget,
            });
        }
        let depth = self.picks.len();
        let k = self.config.num_colors();
        let target = self.config.target();
        if depth == k {
            let sel = ColorfulSelection::full(self.picks.clone());
            let pts = sel.points(self.config);
            return Ok(feasible(&pts, target)?.map(|w| (sel, w)));
        }
        if self.opts.prune {
            let mut pts: Vec<&Point> = self
                .picks
                .iter()
                .enumerate()
                .map(|(c, &i)| self.config.point(c, i))
                .collect();
            pts.extend(self.config.colors()[depth..].iter().flatten());
            if feasible(&pts, target)?.is_none() {
                self.pruned += 1;
                return Ok(None);
            }
        }
        for i in 0..self.config.color(depth).len() {
            self.picks.push(i);
            let found = self.descend()?;
            self.picks.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// Oracle result of [`find_another_colorful`] with the number of calls made.
#[derive(Debug, Clone, PartialEq)]
pub struct AnotherColorful {
    pub selection: ColorfulSelection,
    pub weights: Vec<Rational>,
    pub oracle_calls: usize,
}

/// Finds a colorful set other than the given one, fixing the pairs in order
/// and asking the oracle, once per pair, whether the point outside `T` still
/// extends to a solution.
pub fn find_another_colorful<F>(instance: &FacsInstance, mut oracle: F) -> Result<AnotherColorful>
where
    F: FnMut(&PointConfiguration) -> Result<bool>,
{
    let config = &instance.config;
    let k = instance.num_pairs();
    // chosen[i] = index kept in pair i once decided
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    let mut calls = 0;
    for i in 0..k {
        let given = instance.given.pick(i).expect("given set is full");
        let other = 1 - given;
        let colors: Vec<Vec<Point>> = (0..k)
            .map(|j| match j {
                j if j < i => vec![config.point(j, chosen[j]).clone()],
                j if j == i => vec![config.point(j, other).clone()],
                _ => config.color(j).to_vec(),
            })
            .collect();
        let restricted =
            PointConfiguration::with_target(config.dimension(), colors, config.target().cloned())?;
        calls += 1;
        chosen.push(if oracle(&restricted)? { other } else { given });
    }
    let selection = ColorfulSelection::full(chosen);
    if selection == instance.given {
        return Err(Error::OracleInconsistent(
            "every restricted call answered no although another solution exists".into(),
        ));
    }
    let pts = selection.points(config);
    let weights = feasible(&pts, config.target())?.ok_or_else(|| {
        Error::OracleInconsistent("oracle answers do not lead to a solution".into())
    })?;
    Ok(AnotherColorful {
        selection,
        weights,
        oracle_calls: calls,
    })
}

/// [`clp_decide`] as a yes/no oracle.
pub fn clp_oracle(opts: ClpOptions) -> impl FnMut(&PointConfiguration) -> Result<bool> {
    move |config| clp_decide(config, &opts).map(|a| a.is_yes())
}

/// Reads the equilibrium off a colorful cone `T' ≠ T` of the game instance.
///
/// The cone weights are recomputed on the points of `T'`; the result is
/// checked against the equilibrium conditions of `game`, which may be the
/// original game before [`positivize`].
pub fn extract_nash(
    game: &BimatrixGame,
    instance: &FacsInstance,
    other: &ColorfulSelection,
) -> Result<(MixedProfile, ComplementaryPair)> {
    let pos = positivize(game);
    let (m, n) = (pos.m(), pos.n());
    let k = m + n;
    if instance.num_pairs() != k || !other.fits(&instance.config) || !other.is_full() {
        return Err(Error::InvalidInput("selection does not match the game instance".into()));
    }
    if *other == instance.given {
        return Err(Error::InvalidInput("selection equals the given slack set".into()));
    }
    let target = instance
        .config
        .target()
        .ok_or_else(|| Error::InvalidInput("game instances carry the all-ones target".into()))?;
    let pts = other.points(&instance.config);
    let mu = match cone_member(&pts, target)? {
        ConeMembership::Member(mu) => mu,
        ConeMembership::Separated(_) => {
            return Err(Error::VerificationFailed("target not in the cone of the selection".into()))
        }
    };
    let mut x = vec![Rational::zero(); 2 * k];
    for ((pair, idx), w) in other.entries().zip(mu) {
        x[pair + idx * k] = w;
    }
    let xb = x.split_off(k);
    let pair = ComplementaryPair { xa: x, xb };
    if !pair.verify(&pos) {
        return Err(Error::VerificationFailed("decomposition is not a complementary pair".into()));
    }
    let profile = pair
        .profile(n)
        .ok_or_else(|| Error::OracleInconsistent("a strategy block of the decomposition vanishes".into()))?;
    if !game.is_equilibrium(&profile) {
        return Err(Error::NotAnEquilibrium);
    }
    Ok((profile, pair))
}

/// Equilibrium of `game` through the colorful cone reduction and the CLP
/// oracle.
pub fn solve_bimatrix(game: &BimatrixGame, opts: &ClpOptions) -> Result<MixedProfile> {
    solve_bimatrix_traced(game, opts).map(|(p, _)| p)
}

/// [`solve_bimatrix`] together with the oracle call count.
pub fn solve_bimatrix_traced(game: &BimatrixGame, opts: &ClpOptions) -> Result<(MixedProfile, usize)> {
    let pos = positivize(game);
    let instance = game_to_config(&pos)?;
    let found = find_another_colorful(&instance, clp_oracle(*opts))?;
    let (profile, _) = extract_nash(game, &instance, &found.selection)?;
    Ok((profile, found.oracle_calls))
}

/// All equilibria found from equal-size support pairs, each checked exactly.
/// Intended for small games; degenerate games may have equilibria outside
/// this list.
pub fn support_enumeration(game: &BimatrixGame) -> Vec<MixedProfile> {
    let (m, n) = (game.m(), game.n());
    let mut found: Vec<MixedProfile> = Vec::new();
    for rows in 1u32..(1 << m) {
        let r: Vec<usize> = (0..m).filter(|i| rows >> i & 1 == 1).collect();
        for cols in 1u32..(1 << n) {
            let c: Vec<usize> = (0..n).filter(|j| cols >> j & 1 == 1).collect();
            if r.len() != c.len() {
                continue;
            }
            // z on c makes the row player indifferent over r, y on r makes
            // the column player indifferent over c
            let Some(z) = indifference(&r, &c, |i, j| game.a[i][j].clone()) else {
                continue;
            };
            let Some(y) = indifference(&c, &r, |j, i| game.b[i][j].clone()) else {
                continue;
            };
            let mut yy = vec![Rational::zero(); m];
            for (&i, v) in r.iter().zip(y) {
                yy[i] = v;
            }
            let mut zz = vec![Rational::zero(); n];
            for (&j, v) in c.iter().zip(z) {
                zz[j] = v;
            }
            let p = MixedProfile { y: yy, z: zz };
            if game.is_equilibrium(&p) && !found.contains(&p) {
                found.push(p);
            }
        }
    }
    found
}

/// Nonnegative `x` on `cols` with equal payoff `Σ_j f(i, j) x_j` for every
/// `i` in `rows` and `Σx = 1`.
fn indifference(
    rows: &[usize],
    cols: &[usize],
    f: impl Fn(usize, usize) -> Rational,
) -> Option<Vec<Rational>> {
    let s = cols.len();
    // unknowns x_1..x_s, v: Σ f x - v = 0 per row, Σ x = 1
    let mut mat: Vec<Vec<Rational>> = rows
        .iter()
        .map(|&i| {
            let mut row: Vec<Rational> = cols.iter().map(|&j| f(i, j)).collect();
            row.push(-Rational::one());
            row
        })
        .collect();
    let mut last = vec![Rational::one(); s];
    last.push(Rational::zero());
    mat.push(last);
    let mut rhs = vec![Rational::zero(); s + 1];
    rhs[s] = Rational::one();
    let sol = linalg::solve(&mat, &rhs)?;
    let x = sol[..s].to_vec();
    x.iter().all(rational::is_nonnegative).then_some(x)
}
