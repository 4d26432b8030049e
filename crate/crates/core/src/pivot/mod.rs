//! Pivoting algorithms that find a positively dependent colorful set.
//!
//! [`solve_simplexlike`] runs the simplex method on an auxiliary program with
//! one dummy column, only ever letting points of the missing color enter.
//! [`solve_classic_bo`] walks from colorful simplex to colorful simplex, each
//! time dropping the vertex cut off by the facet hull closest to the origin.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    is_positively_dependent, perturb, ColorfulSelection, ConvexCertificate, Dependence,
    GeneralPositionOptions, PerturbOptions, Point, PointConfiguration,
};
use crate::linalg;
use crate::rational::{self, Rational};

mod classic;
pub mod engine;
mod state;

pub use classic::{facet_separates, separating_facet};
pub use engine::{Engine, ExactEngine, FloatEngine, FLOAT_TOLERANCE};
pub use state::{AuxiliaryProgram, PivotState, PivotStep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum PivotRule {
    /// Most negative reduced cost, ties to the lowest index.
    #[default]
    Dantzig,
    /// First candidate with a negative reduced cost.
    Bland,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Exact,
    Float64,
}

impl fmt::Display for PivotRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PivotRule::Dantzig => "dantzig",
            PivotRule::Bland => "bland",
        })
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Exact => "exact",
            Backend::Float64 => "float64",
        })
    }
}

impl FromStr for PivotRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dantzig" | "dantzig-most-negative" => Ok(PivotRule::Dantzig),
            "bland" => Ok(PivotRule::Bland),
            _ => Err(Error::InvalidInput(format!("unknown pivot rule {s:?}"))),
        }
    }
}

impl FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float64" | "float" => Ok(Backend::Float64),
            _ => Err(Error::InvalidInput(format!("unknown backend {s:?}"))),
        }
    }
}

/// How the first transversal is picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitialRule {
    /// First point of each of the colors `1..d`.
    #[default]
    First,
    /// Uniformly random point of each color, from a seed.
    Seeded(u64),
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub rule: PivotRule,
    pub backend: Backend,
    pub initial: InitialRule,
    /// Switch to Bland's rule when `z` stalls or a basis repeats.
    pub anti_cycling: bool,
    /// Perturb and re-verify when the input turns out degenerate.
    pub perturb_degenerate: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            rule: PivotRule::Dantzig,
            backend: Backend::Exact,
            initial: InitialRule::First,
            anti_cycling: true,
            perturb_degenerate: true,
        }
    }
}

impl SolveOptions {
    pub fn with_rule(rule: PivotRule) -> Self {
        SolveOptions {
            rule,
            ..Default::default()
        }
    }

    pub fn with_backend(backend: Backend) -> Self {
        SolveOptions {
            backend,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub pivots: usize,
    pub wall_time: Duration,
    /// `"dantzig"`, `"bland"` or `"classic"`.
    pub rule: String,
    /// Dantzig's rule was abandoned for Bland's during the run.
    pub switched_to_bland: bool,
    /// Backend that produced the final basis.
    pub backend: Backend,
    /// `z` after each pivot for the simplex-like solver; total negative
    /// barycentric mass for the classic one.
    pub objective_trace: Vec<Rational>,
    /// The instance was perturbed before solving.
    pub perturbed: bool,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub selection: ColorfulSelection,
    /// Weights in color order, exact.
    pub certificate: ConvexCertificate,
    pub report: SolveReport,
    /// False when the answer only holds for `perturbed_instance`.
    pub verified: bool,
    pub perturbed_instance: Option<PointConfiguration>,
}

impl Solution {
    pub fn record(&self, instance: Option<&PointConfiguration>) -> SolveRecord {
        SolveRecord {
            selection: self.selection.clone(),
            weights: self.certificate.clone(),
            pivots: self.report.pivots,
            time_ms: self.report.wall_time.as_secs_f64() * 1e3,
            rule: self.report.rule.clone(),
            backend: self.report.backend,
            verified: self.verified,
            instance: instance.cloned(),
        }
    }
}

/// JSON form of a solver result.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveRecord {
    pub selection: ColorfulSelection,
    pub weights: ConvexCertificate,
    pub pivots: usize,
    pub time_ms: f64,
    pub rule: String,
    pub backend: Backend,
    #[serde(default = "default_true")]
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<PointConfiguration>,
}

fn default_true() -> bool {
    true
}

impl SolveRecord {
    /// Checks colorfulness and the certificate against `config`.
    pub fn verify(&self, config: &PointConfiguration) -> Result<()> {
        if !self.selection.is_full() || !self.selection.fits(config) {
            return Err(Error::VerificationFailed("selection is not a full colorful set".into()));
        }
        let pts = self.selection.points(config);
        if !self.weights.verify(&pts) {
            return Err(Error::VerificationFailed("weights do not express the origin".into()));
        }
        Ok(())
    }
}

/// Picks one point of each of the colors `1..d`.
pub fn initial_transversal(config: &PointConfiguration, rule: InitialRule) -> Result<Vec<usize>> {
    let d = config.dimension();
    if config.num_colors() != d + 1 {
        return Err(Error::InvalidInput(format!(
            "expected {} colors in dimension {d}",
            d + 1
        )));
    }
    if config.colors().iter().any(Vec::is_empty) {
        return Err(Error::DimensionOrEmpty("empty color".into()));
    }
    Ok(match rule {
        InitialRule::First => vec![0; d],
        InitialRule::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..d).map(|c| rng.random_range(0..config.color(c).len())).collect()
        }
    })
}

/// `v = −Σ u` over the transversal, rejected when `F ∪ {v}` is affinely
/// dependent.
pub fn dummy_point<P: AsRef<Point>>(transversal: &[P]) -> Result<Point> {
    let Some(first) = transversal.first() else {
        return Err(Error::DimensionOrEmpty("empty transversal".into()));
    };
    let d = first.as_ref().dim();
    if transversal.len() != d || transversal.iter().any(|p| p.as_ref().dim() != d) {
        return Err(Error::DimensionOrEmpty(format!("expected {d} points of dimension {d}")));
    }
    let v: Vec<Rational> = (0..d)
        .map(|k| -transversal.iter().map(|p| &p.as_ref().0[k]).sum::<Rational>())
        .collect();
    let v = Point::new(v);
    let mut rows: Vec<Vec<Rational>> = transversal.iter().map(|p| p.as_ref().lifted()).collect();
    rows.push(v.lifted());
    if linalg::is_zero_det_fast(&rows) {
        return Err(Error::DegenerateTransversal);
    }
    Ok(v)
}

/// Error for a color without an improving point, carrying a Farkas
/// certificate when the color indeed misses the origin.
pub(crate) fn hypothesis_failure(config: &PointConfiguration, color: usize) -> Error {
    match is_positively_dependent(config.color(color)) {
        Ok(Dependence::Independent(cert)) => Error::HypothesisViolated {
            color,
            certificate: Some(cert),
            reason: "origin is not in the convex hull of this color".into(),
        },
        Ok(Dependence::Dependent(_)) => Error::DegenerateState(format!(
            "no improving point of color {color} although it surrounds the origin"
        )),
        Err(e) => e,
    }
}

pub(crate) struct Outcome {
    selection: ColorfulSelection,
    pivots: usize,
    trace: Vec<Rational>,
    elapsed: Duration,
    switched: bool,
    backend: Backend,
}

fn run_simplex<E: Engine>(config: &PointConfiguration, opts: &SolveOptions) -> Result<Outcome> {
    let start = Instant::now();
    let d = config.dimension();
    let transversal = initial_transversal(config, opts.initial)?;
    let mut state: PivotState<E> = PivotState::new(config, &transversal)?;
    let stall_limit = 2 * (d + 1) * (d + 1);
    let mut rule = opts.rule;
    let mut switched = false;
    let mut stalled = 0usize;
    let mut visited: HashSet<Vec<usize>> = HashSet::new();
    visited.insert(state.basis_key());
    let mut trace = vec![state.objective()];
    let mut z = state.objective_num();
    while !state.is_terminal() {
        let Some(idx) = state.choose_entering(rule)? else {
            return Err(hypothesis_failure(config, state.missing_color()));
        };
        state.pivot_once(idx)?;
        let next = state.objective_num();
        let decreased = match (&z, &next) {
            (Some(a), Some(b)) => E::compare(b, a).is_lt(),
            _ => true,
        };
        z = next;
        trace.push(state.objective());
        if state.is_terminal() {
            break;
        }
        stalled = if decreased { 0 } else { stalled + 1 };
        let fresh = visited.insert(state.basis_key());
        if opts.anti_cycling && rule == PivotRule::Dantzig && (!fresh || stalled > stall_limit) {
            rule = PivotRule::Bland;
            switched = true;
            visited.clear();
            visited.insert(state.basis_key());
        } else if !fresh {
            return Err(Error::CycleDetected {
                pivots: trace.len() - 1,
            });
        }
    }
    let selection = state.selection().expect("terminal state has a selection");
    Ok(Outcome {
        selection,
        pivots: trace.len() - 1,
        trace,
        elapsed: start.elapsed(),
        switched,
        backend: if E::NAME == "exact" { Backend::Exact } else { Backend::Float64 },
    })
}

/// Exact barycentric weights of the origin in the selection.
fn exact_certificate(config: &PointConfiguration, selection: &ColorfulSelection) -> Result<ConvexCertificate> {
    let pts = selection.points(config);
    let d = config.dimension();
    let m: Vec<Vec<Rational>> = (0..=d)
        .map(|i| pts.iter().map(|p| p.lifted()[i].clone()).collect())
        .collect();
    let mut rhs = vec![rational::zero(); d + 1];
    rhs[d] = rational::one();
    let cert = match linalg::solve(&m, &rhs) {
        Some(w) if w.iter().all(|v| !v.is_negative()) => ConvexCertificate { weights: w },
        _ => match is_positively_dependent(&pts)? {
            Dependence::Dependent(c) => c,
            Dependence::Independent(_) => {
                return Err(Error::VerificationFailed(
                    "final colorful set does not contain the origin".into(),
                ))
            }
        },
    };
    if !cert.verify(&pts) {
        return Err(Error::VerificationFailed("certificate does not verify".into()));
    }
    Ok(cert)
}

fn finish(config: &PointConfiguration, out: Outcome, rule: String) -> Result<Solution> {
    let certificate = exact_certificate(config, &out.selection)?;
    Ok(Solution {
        selection: out.selection,
        certificate,
        report: SolveReport {
            pivots: out.pivots,
            wall_time: out.elapsed,
            rule,
            switched_to_bland: out.switched,
            backend: out.backend,
            objective_trace: out.trace,
            perturbed: false,
        },
        verified: true,
        perturbed_instance: None,
    })
}

fn is_degenerate(e: &Error) -> bool {
    matches!(
        e,
        Error::DegenerateTransversal | Error::DegenerateState(_) | Error::CycleDetected { .. }
    )
}

fn check_shape(config: &PointConfiguration) -> Result<()> {
    config.validate()?;
    let d = config.dimension();
    if config.num_colors() != d + 1 {
        return Err(Error::InvalidInput(format!(
            "expected {} colors in dimension {d}, got {}",
            d + 1,
            config.num_colors()
        )));
    }
    Ok(())
}

/// Solves on a perturbed copy, then re-checks the chosen set on the original.
fn solve_perturbed(
    config: &PointConfiguration,
    solve: impl Fn(&PointConfiguration) -> Result<Solution>,
) -> Result<Solution> {
    let opts = PerturbOptions {
        preserve_dependence: true,
        general_position: GeneralPositionOptions::with_origin(),
        max_halvings: 64,
    };
    let moved = perturb(config, &rational::frac(1, 1024), &opts)?;
    let mut sol = solve(&moved)?;
    sol.report.perturbed = true;
    match exact_certificate(config, &sol.selection) {
        Ok(cert) => {
            sol.certificate = cert;
            sol.verified = true;
        }
        Err(_) => {
            sol.verified = false;
            sol.perturbed_instance = Some(moved);
        }
    }
    Ok(sol)
}

/// Simplex-like pivoting on the auxiliary program.
pub fn solve_simplexlike(config: &PointConfiguration, opts: &SolveOptions) -> Result<Solution> {
    check_shape(config)?;
    let attempt = |cfg: &PointConfiguration, backend: Backend| -> Result<Solution> {
        let out = match backend {
            Backend::Exact => run_simplex::<ExactEngine>(cfg, opts)?,
            Backend::Float64 => run_simplex::<FloatEngine>(cfg, opts)?,
        };
        let name = if out.switched { PivotRule::Bland } else { opts.rule };
        finish(cfg, out, name.to_string())
    };
    let first = attempt(config, opts.backend);
    let result = match first {
        // float trouble is retried exactly before anything else
        Err(e) if opts.backend == Backend::Float64 && !matches!(e, Error::HypothesisViolated { .. }) => {
            attempt(config, Backend::Exact)
        }
        r => r,
    };
    match result {
        Err(e) if opts.perturb_degenerate && is_degenerate(&e) => {
            solve_perturbed(config, |cfg| attempt(cfg, Backend::Exact))
        }
        r => r,
    }
}

/// Classic separating-facet pivoting.
pub fn solve_classic_bo(config: &PointConfiguration, opts: &SolveOptions) -> Result<Solution> {
    check_shape(config)?;
    if config.colors().iter().any(Vec::is_empty) {
        return Err(Error::DimensionOrEmpty("empty color".into()));
    }
    let attempt = |cfg: &PointConfiguration, backend: Backend| -> Result<Solution> {
        let out = match backend {
            Backend::Exact => classic::run::<ExactEngine>(cfg, Backend::Exact)?,
            Backend::Float64 => classic::run::<FloatEngine>(cfg, Backend::Float64)?,
        };
        finish(cfg, out, "classic".into())
    };
    let result = match attempt(config, opts.backend) {
        Err(e) if opts.backend == Backend::Float64 && !matches!(e, Error::HypothesisViolated { .. }) => {
            attempt(config, Backend::Exact)
        }
        r => r,
    };
    match result {
        Err(e) if opts.perturb_degenerate && is_degenerate(&e) => {
            solve_perturbed(config, |cfg| attempt(cfg, Backend::Exact))
        }
        r => r,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::enumerate_pdcs;
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
    fn dummy_is_negated_sum() {
        let f = [Point::from_ints(&[1, 0]), Point::from_ints(&[0, 1])];
        assert_eq!(dummy_point(&f).unwrap(), Point::from_ints(&[-1, -1]));
        assert_eq!(dummy_point(&[Point::from_ints(&[2])]).unwrap(), Point::from_ints(&[-2]));
        let sym = [Point::from_ints(&[1, 0]), Point::from_ints(&[-1, 0])];
        assert!(matches!(dummy_point(&sym), Err(Error::DegenerateTransversal)));
    }

    #[test]
    fn first_point_transversal() {
        let cfg = PointConfiguration::new(
            2,
            vec![
                vec![Point::from_ints(&[1, 0]), Point::from_ints(&[-1, 0])],
                vec![Point::from_ints(&[0, 1]), Point::from_ints(&[0, -1])],
                vec![Point::from_ints(&[1, 1]), Point::from_ints(&[-1, -1])],
            ],
        )
        .unwrap();
        assert_eq!(initial_transversal(&cfg, InitialRule::First).unwrap(), vec![0, 0]);
        for seed in 0..20 {
            let t = initial_transversal(&cfg, InitialRule::Seeded(seed)).unwrap();
            assert_eq!(t.len(), 2);
            assert!(t.iter().all(|&i| i < 2));
        }
    }

    #[test]
    fn line_instance_from_both_solvers() {
        let cfg = line();
        let all = enumerate_pdcs(&cfg, 100).unwrap();
        for rule in [PivotRule::Dantzig, PivotRule::Bland] {
            for backend in [Backend::Exact, Backend::Float64] {
                let opts = SolveOptions {
                    rule,
                    backend,
                    ..Default::default()
                };
                let sol = solve_simplexlike(&cfg, &opts).unwrap();
                assert_eq!(sol.selection, ColorfulSelection::full(vec![0, 0]));
                assert_eq!(sol.certificate.weights, vec![frac(3, 5), frac(2, 5)]);
                assert_eq!(sol.report.pivots, 1);
                assert!(all.contains(&sol.selection));
            }
        }
        let sol = solve_classic_bo(&cfg, &SolveOptions::default()).unwrap();
        assert!(all.contains(&sol.selection));
        assert!(sol.certificate.verify(&sol.selection.points(&cfg)));
    }

    #[test]
    fn other_start_gives_the_other_answer() {
        // start from -1: dummy 1, entering 5
        let cfg = PointConfiguration::new(
            1,
            vec![
                vec![Point::from_ints(&[-1]), Point::from_ints(&[2])],
                vec![Point::from_ints(&[-3]), Point::from_ints(&[5])],
            ],
        )
        .unwrap();
        let sol = solve_simplexlike(&cfg, &SolveOptions::default()).unwrap();
        assert_eq!(sol.selection, ColorfulSelection::full(vec![0, 1]));
        assert_eq!(sol.certificate.weights, vec![frac(5, 6), frac(1, 6)]);
    }

    #[test]
    fn violated_hypothesis_reports_the_color() {
        let cfg = PointConfiguration::new(
            1,
            vec![
                vec![Point::from_ints(&[2]), Point::from_ints(&[-1])],
                vec![Point::from_ints(&[3]), Point::from_ints(&[5])],
            ],
        )
        .unwrap();
        match solve_simplexlike(&cfg, &SolveOptions::default()) {
            Err(Error::HypothesisViolated {
                color: 1,
                certificate: Some(c),
                ..
            }) => assert!(c.verify(&cfg.color(1).iter().collect::<Vec<_>>())),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            solve_classic_bo(&cfg, &SolveOptions::default()),
            Err(Error::HypothesisViolated { color: 1, .. })
        ));
    }

    #[test]
    fn degenerate_input_is_perturbed_and_reverified() {
        // both colors repeat the same points, so the first transversal is degenerate
        let cfg = PointConfiguration::new(
            2,
            vec![
                vec![Point::from_ints(&[1, 0]), Point::from_ints(&[-1, 1]), Point::from_ints(&[-1, -1])],
                vec![Point::from_ints(&[-1, 0]), Point::from_ints(&[1, 1]), Point::from_ints(&[1, -1])],
                vec![Point::from_ints(&[0, 1]), Point::from_ints(&[0, -1]), Point::from_ints(&[2, 0])],
            ],
        )
        .unwrap();
        let sol = solve_simplexlike(&cfg, &SolveOptions::default()).unwrap();
        assert!(sol.report.perturbed);
        if sol.verified {
            assert!(sol.certificate.verify(&sol.selection.points(&cfg)));
        } else {
            let moved = sol.perturbed_instance.as_ref().unwrap();
            assert!(sol.certificate.verify(&sol.selection.points(moved)));
        }
    }

    #[test]
    fn record_round_trip() {
        let cfg = line();
        let sol = solve_simplexlike(&cfg, &SolveOptions::default()).unwrap();
        let rec = sol.record(Some(&cfg));
        let text = serde_json::to_string(&rec).unwrap();
        assert!(text.contains("\"backend\":\"exact\""));
        assert!(text.contains("\"weights\":[\"3/5\",\"2/5\"]"));
        let back: SolveRecord = serde_json::from_str(&text).unwrap();
        back.verify(back.instance.as_ref().unwrap()).unwrap();
    }
}
