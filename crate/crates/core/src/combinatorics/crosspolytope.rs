//! Fully-labeled facets of a labeled cross-polytope boundary.
//!
//! Axis `i` carries the two vertices `+e_i` and `-e_i`; a facet picks one
//! sign per axis. Labels run over `0..axes`.

use serde::{Deserialize, Serialize};

use super::matching::max_matching;
use super::matroid::{another_colorful_basis, PartitionMatroid};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    fn slot(self) -> usize {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }

    fn from_slot(k: usize) -> Self {
        if k == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// One sign per axis.
pub type Facet = Vec<Sign>;

/// Labels `[λ(+e_i), λ(-e_i)]` of the `d+1` axes, each in `0..=d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawLabeling")]
pub struct CrossPolytopeLabeling {
    labels: Vec<[usize; 2]>,
}

#[derive(Deserialize)]
struct RawLabeling {
    labels: Vec<[usize; 2]>,
}

impl TryFrom<RawLabeling> for CrossPolytopeLabeling {
    type Error = Error;
    fn try_from(raw: RawLabeling) -> Result<Self> {
        CrossPolytopeLabeling::new(raw.labels)
    }
}

impl CrossPolytopeLabeling {
    pub fn new(labels: Vec<[usize; 2]>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::DimensionOrEmpty("cross-polytope needs an axis".into()));
        }
        let k = labels.len();
        if labels.iter().flatten().any(|&l| l >= k) {
            return Err(Error::InvalidInput(format!("labels must lie in 0..{k}")));
        }
        Ok(CrossPolytopeLabeling { labels })
    }

    /// Number of axes, `d+1`.
    pub fn axes(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, axis: usize, sign: Sign) -> usize {
        self.labels[axis][sign.slot()]
    }

    pub fn is_fully_labeled(&self, facet: &[Sign]) -> bool {
        if facet.len() != self.axes() {
            return false;
        }
        let mut seen = vec![false; self.axes()];
        for (i, &s) in facet.iter().enumerate() {
            let l = self.label(i, s);
            if seen[l] {
                return false;
            }
            seen[l] = true;
        }
        true
    }

    /// Every fully-labeled facet, by scanning all `2^(d+1)` sign vectors.
    pub fn brute_force(&self) -> Vec<Facet> {
        let k = self.axes();
        assert!(k < 64, "too many axes to enumerate");
        (0u64..1 << k)
            .map(|mask| (0..k).map(|i| Sign::from_slot((mask >> i & 1) as usize)).collect::<Facet>())
            .filter(|f| self.is_fully_labeled(f))
            .collect()
    }
}

/// A fully-labeled facet if one exists: a perfect matching of axes to labels
/// in the graph joining axis `i` to the labels of its two vertices.
pub fn crosspolytope_decide(labeling: &CrossPolytopeLabeling) -> Option<Facet> {
    let k = labeling.axes();
    let adj: Vec<Vec<usize>> = labeling.labels.iter().map(|l| l.to_vec()).collect();
    let m = max_matching(&adj, k);
    if !m.is_left_perfect() {
        return None;
    }
    Some(
        (0..k)
            .map(|i| {
                let l = m.left[i].unwrap();
                if labeling.labels[i][0] == l {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            })
            .collect(),
    )
}

/// A fully-labeled facet different from `facet`.
///
/// Choices forced in every fully-labeled facet agreeing with the forced ones
/// so far are fixed first: a label with a single live vertex, or an axis with
/// a single live vertex. A vertex dies when its label is already used. What
/// remains has every label on exactly two live vertices, and a second
/// colorful basis of the axis partition matroid, colored by labels, gives the
/// other facet.
pub fn crosspolytope_another(labeling: &CrossPolytopeLabeling, facet: &[Sign]) -> Result<Facet> {
    if !labeling.is_fully_labeled(facet) {
        return Err(Error::hypothesis(0, "given facet is not fully labeled"));
    }
    let k = labeling.axes();
    let mut chosen: Vec<Option<Sign>> = vec![None; k];
    let mut label_used = vec![false; k];
    let live = |chosen: &[Option<Sign>], used: &[bool], i: usize, s: usize| {
        chosen[i].is_none() && !used[labeling.labels[i][s]]
    };
    loop {
        let mut forced = None;
        for i in 0..k {
            if chosen[i].is_some() {
                continue;
            }
            let alive: Vec<usize> = (0..2).filter(|&s| live(&chosen, &label_used, i, s)).collect();
            if alive.len() == 1 {
                forced = Some((i, alive[0]));
                break;
            }
        }
        if forced.is_none() {
            let mut count = vec![0usize; k];
            let mut at = vec![(0, 0); k];
            for i in 0..k {
                for s in 0..2 {
                    if live(&chosen, &label_used, i, s) {
                        let l = labeling.labels[i][s];
                        count[l] += 1;
                        at[l] = (i, s);
                    }
                }
            }
            forced = (0..k).find(|&l| !label_used[l] && count[l] == 1).map(|l| at[l]);
        }
        let Some((i, s)) = forced else { break };
        if facet[i].slot() != s {
            return Err(Error::hypothesis(0, "forced vertex missing from the given facet"));
        }
        chosen[i] = Some(Sign::from_slot(s));
        label_used[labeling.labels[i][s]] = true;
    }
    let free: Vec<usize> = (0..k).filter(|&i| chosen[i].is_none()).collect();
    if free.is_empty() {
        return Err(Error::hypothesis(0, "the given facet is the only fully-labeled one"));
    }
    // ground set: vertex 2j+s is sign s of axis free[j]; colors are relabeled free labels
    let free_labels: Vec<usize> = (0..k).filter(|&l| !label_used[l]).collect();
    let class_of: Vec<usize> = (0..2 * free.len()).map(|v| v / 2).collect();
    let coloring: Vec<usize> = free
        .iter()
        .flat_map(|&i| labeling.labels[i])
        .map(|l| free_labels.iter().position(|&f| f == l).expect("live labels only"))
        .collect();
    let axes = PartitionMatroid::unit(class_of);
    let given: Vec<usize> = free.iter().enumerate().map(|(j, &i)| 2 * j + facet[i].slot()).collect();
    let other = another_colorful_basis(&axes, &coloring, &given)?;
    for v in other {
        chosen[free[v / 2]] = Some(Sign::from_slot(v % 2));
    }
    Ok(chosen.into_iter().map(|s| s.expect("every axis chosen")).collect())
}
