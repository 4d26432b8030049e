//! Seeded instance families of `(d+1)²` unit-sphere points in `d+1` colors,
//! each color surrounding the origin, and the lifting transforms between
//! problem sizes.
//!
//! Coordinates are drawn in binary64, rounded to 15 significant decimal
//! digits and stored as exact rationals; points are therefore unit vectors
//! only up to that rounding. Every instance is checked exactly for per-color
//! positive dependence and (sampled) general position together with the
//! origin, and redrawn from the same stream on failure.
//!
//! Families, per color:
//!
//! - `random`: `d` uniform sphere points closed by the normalized negative
//!   of their sum.
//! - `tube`: the same construction inside a thin band around one half of a
//!   great circle shared by all colors.
//! - `highdensity`: the vertices of one randomly rotated regular simplex,
//!   shared by all colors and jittered per point.
//! - `lowdensity`: `d` points in a small cap around one center shared by all
//!   colors, plus the closing point.
//! - `middensity`: `d` points in a wider cap around a center of the color's
//!   own, plus the closing point.
//!
//! Points are listed in random order within each color.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    contains_origin, is_general_position, GeneralPositionOptions, Point, PointConfiguration,
};
use crate::rational::{self, Rational};

/// Identifier of the random stream, stored with every generated instance.
pub const RNG_ID: &str = "chacha20/rand_chacha-0.9/stream=kind*2^32+d/std-normal-ziggurat";

const DIGITS: usize = 15;
const MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Random,
    Tube,
    Highdensity,
    Lowdensity,
    Middensity,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 5] = [
        GeneratorKind::Random,
        GeneratorKind::Tube,
        GeneratorKind::Highdensity,
        GeneratorKind::Lowdensity,
        GeneratorKind::Middensity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::Random => "random",
            GeneratorKind::Tube => "tube",
            GeneratorKind::Highdensity => "highdensity",
            GeneratorKind::Lowdensity => "lowdensity",
            GeneratorKind::Middensity => "middensity",
        }
    }

    fn stream_tag(self) -> u64 {
        match self {
            GeneratorKind::Random => 1,
            GeneratorKind::Tube => 2,
            GeneratorKind::Highdensity => 3,
            GeneratorKind::Lowdensity => 4,
            GeneratorKind::Middensity => 5,
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GeneratorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown generator {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub dimension: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, dimension: usize, seed: u64) -> Self {
        GeneratorSpec {
            kind,
            dimension,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub kind: GeneratorKind,
    pub dimension: usize,
    pub seed: u64,
    pub rng: String,
}

/// A configuration together with the parameters that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratedInstance {
    #[serde(flatten)]
    pub config: PointConfiguration,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

/// Angular spread of the cap families, as the standard deviation of the
/// tangential Gaussian offset around the cap center. Low-density colors
/// share one cap; middle-density colors each get their own.
const LOW_SPREAD: f64 = 0.02;
const MID_SPREAD: f64 = 0.07;
/// Offset of each high-density point from its vertex of the shared simplex.
const HIGH_JITTER: f64 = 0.01;
/// Standard deviation of the off-circle coordinates in the tube family.
const TUBE_WIDTH: f64 = 0.08;

struct Sampler {
    rng: ChaCha20Rng,
    d: usize,
}

impl Sampler {
    fn gaussian(&mut self) -> Vec<f64> {
        (0..self.d).map(|_| self.rng.sample(StandardNormal)).collect()
    }

    fn on_sphere(&mut self) -> Vec<f64> {
        loop {
            let g = self.gaussian();
            if let Some(u) = normalized(&g) {
                return u;
            }
        }
    }

    /// Point near `center` with tangential Gaussian spread `sigma`.
    fn in_cap(&mut self, center: &[f64], sigma: f64) -> Vec<f64> {
        loop {
            let g = self.gaussian();
            let v: Vec<f64> = center.iter().zip(&g).map(|(c, x)| c + sigma * x).collect();
            if let Some(u) = normalized(&v) {
                return u;
            }
        }
    }

    /// Orthonormal pair spanning a uniformly random plane.
    fn random_plane(&mut self) -> (Vec<f64>, Vec<f64>) {
        let a = self.on_sphere();
        loop {
            let mut b = self.gaussian();
            let p = dot(&a, &b);
            b.iter_mut().zip(&a).for_each(|(x, y)| *x -= p * y);
            if let Some(b) = normalized(&b) {
                return (a, b);
            }
        }
    }

    /// Point of the half circle `cos θ a + sin θ b`, `0 <= θ < π`, moved by
    /// Gaussian noise of scale `TUBE_WIDTH` and renormalized.
    fn in_tube(&mut self, plane: &(Vec<f64>, Vec<f64>)) -> Vec<f64> {
        let theta = self.rng.random_range(0.0..std::f64::consts::PI);
        loop {
            let g = self.gaussian();
            let v: Vec<f64> = (0..self.d)
                .map(|k| theta.cos() * plane.0[k] + theta.sin() * plane.1[k] + TUBE_WIDTH * g[k])
                .collect();
            if let Some(u) = normalized(&v) {
                return u;
            }
        }
    }

    /// Vertices of a regular simplex inscribed in the sphere, randomly rotated.
    fn regular_simplex(&mut self) -> Vec<Vec<f64>> {
        let d = self.d;
        // orthonormal basis of {x ∈ R^{d+1} : Σx = 0} in random orientation
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(d);
        let ones = 1.0 / ((d + 1) as f64).sqrt();
        while basis.len() < d {
            let mut g: Vec<f64> = (0..=d).map(|_| self.rng.sample(StandardNormal)).collect();
            let s: f64 = g.iter().sum::<f64>() * ones;
            g.iter_mut().for_each(|x| *x -= s * ones);
            for b in &basis {
                let p = dot(b, &g);
                g.iter_mut().zip(b).for_each(|(x, y)| *x -= p * y);
            }
            if let Some(u) = normalized(&g) {
                basis.push(u);
            }
        }
        // vertex i is e_i minus the centroid, expressed in that basis
        (0..=d)
            .map(|i| {
                let v: Vec<f64> = basis.iter().map(|b| b[i]).collect();
                normalized(&v).expect("simplex vertices are nonzero")
            })
            .collect()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalized(v: &[f64]) -> Option<Vec<f64>> {
    let n = dot(v, v).sqrt();
    (n > 1e-9 && n.is_finite()).then(|| v.iter().map(|x| x / n).collect())
}

/// `-Σu` normalized: the point closing a color around the origin.
fn closing_point(pts: &[Vec<f64>]) -> Option<Vec<f64>> {
    let d = pts[0].len();
    let s: Vec<f64> = (0..d).map(|k| -pts.iter().map(|p| p[k]).sum::<f64>()).collect();
    normalized(&s)
}

fn to_point(v: &[f64]) -> Point {
    Point::new(v.iter().map(|&x| rational::from_f64_rounded(x, DIGITS)).collect())
}

fn draw(kind: GeneratorKind, s: &mut Sampler) -> Option<Vec<Vec<Vec<f64>>>> {
    let d = s.d;
    let plane = (kind == GeneratorKind::Tube).then(|| s.random_plane());
    let simplex = (kind == GeneratorKind::Highdensity).then(|| s.regular_simplex());
    let low_center = (kind == GeneratorKind::Lowdensity).then(|| s.on_sphere());
    let mut colors = Vec::with_capacity(d + 1);
    for _ in 0..=d {
        let mut color = match kind {
            GeneratorKind::Highdensity => {
                let simplex = simplex.as_ref().expect("simplex drawn for highdensity");
                simplex.iter().map(|v| s.in_cap(v, HIGH_JITTER)).collect()
            }
            _ => {
                let mut pts: Vec<Vec<f64>> = match kind {
                    GeneratorKind::Random => (0..d).map(|_| s.on_sphere()).collect(),
                    GeneratorKind::Tube => {
                        let plane = plane.as_ref().expect("plane drawn for tube");
                        (0..d).map(|_| s.in_tube(plane)).collect()
                    }
                    GeneratorKind::Lowdensity => {
                        let center = low_center.as_ref().expect("center drawn for lowdensity");
                        (0..d).map(|_| s.in_cap(center, LOW_SPREAD)).collect()
                    }
                    _ => {
                        let center = s.on_sphere();
                        (0..d).map(|_| s.in_cap(&center, MID_SPREAD)).collect()
                    }
                };
                pts.push(closing_point(&pts)?);
                pts
            }
        };
        color.shuffle(&mut s.rng);
        colors.push(color);
    }
    Some(colors)
}

/// Sampled subsets for the general-position check, keeping the total
/// elimination work near that of 2000 subsets at `d = 12`.
fn gp_samples(d: usize) -> usize {
    let scale = (13.0 / (d + 1) as f64).powi(3);
    ((2000.0 * scale) as usize).clamp(200, 2000)
}

fn verified(config: &PointConfiguration, seed: u64) -> bool {
    let dependent = config
        .colors()
        .iter()
        .all(|c| contains_origin(c).unwrap_or(false));
    dependent
        && is_general_position(
            config,
            &GeneralPositionOptions {
                seed,
                samples: gp_samples(config.dimension()),
                ..GeneralPositionOptions::with_origin()
            },
        )
}

/// Draws the instance for `spec`; a deterministic function of the spec.
pub fn generate(spec: &GeneratorSpec) -> Result<GeneratedInstance> {
    let d = spec.dimension;
    if d < 2 {
        return Err(Error::InvalidInput(
            "sphere instances in general position need dimension at least 2".into(),
        ));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);
    rng.set_stream((spec.kind.stream_tag() << 32) | d as u64);
    let mut sampler = Sampler { rng, d };
    for _ in 0..MAX_ATTEMPTS {
        let Some(raw) = draw(spec.kind, &mut sampler) else {
            continue;
        };
        let colors = raw.iter().map(|c| c.iter().map(|p| to_point(p)).collect()).collect();
        let config = PointConfiguration::new(d, colors)?;
        if verified(&config, spec.seed) {
            return Ok(GeneratedInstance {
                config,
                provenance: Some(Provenance {
                    kind: spec.kind,
                    dimension: d,
                    seed: spec.seed,
                    rng: RNG_ID.to_string(),
                }),
            });
        }
    }
    Err(Error::VerificationFailed(format!(
        "no valid {} instance after {MAX_ATTEMPTS} draws",
        spec.kind
    )))
}

fn append_coordinate(p: &Point, value: Rational) -> Point {
    let mut c = p.0.clone();
    c.push(value);
    Point::new(c)
}

/// Embeds the configuration in one more dimension with a trailing zero.
pub fn lift_dim(config: &PointConfiguration) -> PointConfiguration {
    let colors = config
        .colors()
        .iter()
        .map(|c| c.iter().map(|p| append_coordinate(p, rational::zero())).collect())
        .collect();
    let target = config.target().map(|t| append_coordinate(t, rational::zero()));
    PointConfiguration::with_target(config.dimension() + 1, colors, target)
        .expect("lifting keeps a valid configuration")
}

/// Drops the trailing coordinate; inverse of [`lift_dim`].
pub fn drop_last_dim(config: &PointConfiguration) -> Result<PointConfiguration> {
    let d = config.dimension();
    if d < 2 {
        return Err(Error::DimensionOrEmpty("cannot drop the only coordinate".into()));
    }
    let trim = |p: &Point| Point::new(p.0[..d - 1].to_vec());
    let colors = config
        .colors()
        .iter()
        .map(|c| c.iter().map(trim).collect())
        .collect();
    PointConfiguration::with_target(d - 1, colors, config.target().map(trim))
}

/// Lifts by one dimension and adds two colors, each made of two copies of
/// the new unit vector `(0,…,0,1)`.
pub fn add_color_pair(config: &PointConfiguration) -> PointConfiguration {
    let lifted = lift_dim(config);
    let d = lifted.dimension();
    let mut apex = vec![rational::zero(); d];
    apex[d - 1] = rational::one();
    let apex = Point::new(apex);
    let mut colors = lifted.colors().to_vec();
    colors.push(vec![apex.clone(), apex.clone()]);
    colors.push(vec![apex.clone(), apex]);
    PointConfiguration::with_target(d, colors, lifted.target().cloned())
        .expect("adding colors keeps a valid configuration")
}

/// `d+1` pairs of integer points in `[-range, range]^d` in general position
/// together with the origin, drawn from `seed`.
///
/// The check is exhaustive and exact, so this is meant for small `d`.
pub fn random_pairs(d: usize, range: i64, seed: u64) -> Result<PointConfiguration> {
    if d == 0 || range < 1 {
        return Err(Error::InvalidInput("pairs need d >= 1 and a positive range".into()));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let opts = GeneralPositionOptions {
        full: true,
        ..GeneralPositionOptions::with_origin()
    };
    for _ in 0..MAX_ATTEMPTS {
        let colors = (0..=d)
            .map(|_| {
                (0..2)
                    .map(|_| {
                        let c: Vec<i64> = (0..d).map(|_| rng.random_range(-range..=range)).collect();
                        Point::from_ints(&c)
                    })
                    .collect()
            })
            .collect();
        let config = PointConfiguration::new(d, colors)?;
        if is_general_position(&config, &opts) {
            return Ok(config);
        }
    }
    Err(Error::VerificationFailed(format!(
        "no pair configuration in general position after {MAX_ATTEMPTS} draws"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::enumerate_pdcs;
    use crate::rational::to_f64;

    #[test]
    fn every_family_meets_the_contract() {
        for kind in GeneratorKind::ALL {
            for d in [2, 3, 5] {
                let inst = generate(&GeneratorSpec::new(kind, d, 7)).unwrap();
                let cfg = &inst.config;
                assert_eq!(cfg.num_colors(), d + 1);
                assert!(cfg.colors().iter().all(|c| c.len() == d + 1));
                for (_, _, p) in cfg.iter_points() {
                    let n: f64 = p.coords().iter().map(|x| to_f64(x).powi(2)).sum();
                    assert!((n - 1.0).abs() < 1e-12, "{kind} norm {n}");
                }
                assert!(cfg.check_colors_dependent().is_ok());
                let full = GeneralPositionOptions {
                    full: true,
                    ..GeneralPositionOptions::with_origin()
                };
                if d <= 3 {
                    assert!(is_general_position(cfg, &full));
                }
            }
        }
    }

    #[test]
    fn same_seed_same_bytes() {
        for kind in GeneratorKind::ALL {
            let spec = GeneratorSpec::new(kind, 4, 99);
            let a = serde_json::to_string(&generate(&spec).unwrap()).unwrap();
            let b = serde_json::to_string(&generate(&spec).unwrap()).unwrap();
            assert_eq!(a, b);
            let c = serde_json::to_string(&generate(&GeneratorSpec::new(kind, 4, 100)).unwrap()).unwrap();
            assert_ne!(a, c);
        }
    }

    #[test]
    fn dimension_one_is_rejected() {
        assert!(generate(&GeneratorSpec::new(GeneratorKind::Random, 1, 0)).is_err());
    }

    #[test]
    fn provenance_is_serialized() {
        let inst = generate(&GeneratorSpec::new(GeneratorKind::Tube, 2, 3)).unwrap();
        let v: serde_json::Value = serde_json::to_value(&inst).unwrap();
        assert_eq!(v["provenance"]["kind"], "tube");
        assert_eq!(v["provenance"]["seed"], 3);
        assert_eq!(v["dimension"], 2);
        let back: GeneratedInstance = serde_json::from_value(v).unwrap();
        assert_eq!(back, inst);
    }

    fn pair_line() -> PointConfiguration {
        PointConfiguration::new(
            1,
            vec![
                vec![Point::from_ints(&[1]), Point::from_ints(&[-1])],
                vec![Point::from_ints(&[2]), Point::from_ints(&[-3])],
            ],
        )
        .unwrap()
    }

    #[test]
    fn lifting_keeps_the_solutions() {
        let cfg = pair_line();
        let lifted = lift_dim(&cfg);
        assert_eq!(lifted.dimension(), 2);
        assert_eq!(lifted.point(1, 1), &Point::from_ints(&[-3, 0]));
        assert_eq!(lifted.total_points(), cfg.total_points());
        let a = enumerate_pdcs(&cfg, 100).unwrap();
        let b = enumerate_pdcs(&lifted, 100).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a, b);
        assert_eq!(drop_last_dim(&lifted).unwrap(), cfg);
    }

    #[test]
    fn color_pair_adds_two_apex_colors() {
        let cfg = pair_line();
        let out = add_color_pair(&cfg);
        assert_eq!(out.dimension(), 2);
        assert_eq!(out.num_colors(), 4);
        assert_eq!(out.color(3), &[Point::from_ints(&[0, 1]), Point::from_ints(&[0, 1])]);
        // k - d goes from 1 to 2
        assert_eq!(out.num_colors() - out.dimension(), cfg.num_colors() - cfg.dimension() + 1);
    }
}
