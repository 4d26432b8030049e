//! The complement complex of `d+1` pairs of points in `R^d`.
//!
//! Vertex `2c + j` is point `j` of color `c` and carries label `c`. A vertex
//! set is a face when the points outside it are positively dependent. A face
//! with one vertex per color is fully labeled, and its complement is then a
//! positively dependent colorful set, so fully-labeled faces and solutions
//! correspond one to one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{is_positively_dependent, Point, PointConfiguration};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Number of fully-labeled faces and its parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub count: usize,
    pub parity: Parity,
}

impl Census {
    pub fn new(count: usize) -> Self {
        let parity = if count % 2 == 0 { Parity::Even } else { Parity::Odd };
        Census { count, parity }
    }
}

#[derive(Debug, Clone)]
pub struct ComplementComplex {
    config: PointConfiguration,
}

impl ComplementComplex {
    /// Requires exactly `d+1` colors of two points each.
    pub fn new(config: PointConfiguration) -> Result<Self> {
        let d = config.dimension();
        if config.num_colors() != d + 1 || config.colors().iter().any(|c| c.len() != 2) {
            return Err(Error::InvalidInput(format!(
                "complement complex needs {} pairs in dimension {d}",
                d + 1
            )));
        }
        Ok(ComplementComplex { config })
    }

    pub fn config(&self) -> &PointConfiguration {
        &self.config
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.config.num_colors()
    }

    pub fn label(&self, v: usize) -> usize {
        v / 2
    }

    fn point(&self, v: usize) -> &Point {
        self.config.point(v / 2, v % 2)
    }

    /// Whether the vertex set `sigma` is a face.
    pub fn contains(&self, sigma: &[usize]) -> Result<bool> {
        let n = self.vertex_count();
        if let Some(&v) = sigma.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidInput(format!("vertex {v} out of range")));
        }
        let rest: Vec<&Point> = (0..n).filter(|v| !sigma.contains(v)).map(|v| self.point(v)).collect();
        if rest.is_empty() {
            return Ok(false);
        }
        Ok(is_positively_dependent(&rest)?.is_dependent())
    }

    fn mask_members(&self, budget: u64) -> Result<Vec<u32>> {
        let n = self.vertex_count();
        if n >= 32 || 1u64 << n > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        let mut out = Vec::new();
        for mask in 0u32..1 << n {
            if self.contains(&bits(mask, n))? {
                out.push(mask);
            }
        }
        Ok(out)
    }

    /// Every face, as sorted vertex lists.
    pub fn faces(&self, budget: u64) -> Result<Vec<Vec<usize>>> {
        let n = self.vertex_count();
        Ok(self.mask_members(budget)?.into_iter().map(|m| bits(m, n)).collect())
    }

    /// Largest face dimension (size minus one), or `None` if no nonempty
    /// face exists.
    pub fn dimension(&self, budget: u64) -> Result<Option<usize>> {
        Ok(self
            .mask_members(budget)?
            .into_iter()
            .map(|m| m.count_ones() as usize)
            .max()
            .filter(|&s| s > 0)
            .map(|s| s - 1))
    }

    /// Every subset of a face is a face.
    pub fn is_downward_closed(&self, budget: u64) -> Result<bool> {
        let members = self.mask_members(budget)?;
        let mut is_face = vec![false; 1 << self.vertex_count()];
        for &m in &members {
            is_face[m as usize] = true;
        }
        Ok(members.iter().all(|&m| {
            (0..self.vertex_count()).all(|v| m >> v & 1 == 0 || is_face[(m & !(1 << v)) as usize])
        }))
    }

    /// The fully-labeled faces: one vertex per color, complement positively
    /// dependent.
    pub fn fully_labeled(&self, budget: u64) -> Result<Vec<Vec<usize>>> {
        let k = self.config.num_colors();
        if k >= 63 || 1u64 << k > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        let mut out = Vec::new();
        for mask in 0u64..1 << k {
            let sigma: Vec<usize> = (0..k).map(|c| 2 * c + (mask >> c & 1) as usize).collect();
            if self.contains(&sigma)? {
                out.push(sigma);
            }
        }
        Ok(out)
    }

    pub fn census(&self, budget: u64) -> Result<Census> {
        Ok(Census::new(self.fully_labeled(budget)?.len()))
    }
}

fn bits(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{enumerate_pdcs, DEFAULT_ENUMERATION_BUDGET};
    use crate::generators::random_pairs;

    const BUDGET: u64 = DEFAULT_ENUMERATION_BUDGET;

    fn line() -> ComplementComplex {
        let cfg = PointConfiguration::new(
            1,
            vec![
                vec![Point::from_ints(&[1]), Point::from_ints(&[-1])],
                vec![Point::from_ints(&[2]), Point::from_ints(&[-3])],
            ],
        )
        .unwrap();
        ComplementComplex::new(cfg).unwrap()
    }

    #[test]
    fn line_census_is_two() {
        let k = line();
        assert_eq!(k.census(BUDGET).unwrap(), Census { count: 2, parity: Parity::Even });
        // {-1, +2} and {+1, -3}, complements of the solutions {+1, -3} and {-1, +2}
        assert_eq!(k.fully_labeled(BUDGET).unwrap(), vec![vec![1, 2], vec![0, 3]]);
        assert_eq!(enumerate_pdcs(k.config(), BUDGET).unwrap().len(), 2);
    }

    #[test]
    fn line_complex_shape() {
        let k = line();
        assert!(k.is_downward_closed(BUDGET).unwrap());
        assert_eq!(k.dimension(BUDGET).unwrap(), Some(1));
        assert!(!k.contains(&[0, 1, 2, 3]).unwrap());
    }

    #[test]
    fn rejects_non_pairs() {
        let cfg = PointConfiguration::new(1, vec![vec![Point::from_ints(&[1])]; 2]).unwrap();
        assert!(ComplementComplex::new(cfg).is_err());
        assert!(matches!(line().faces(4), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn census_matches_enumeration_and_is_even() {
        for d in 1..=3 {
            for seed in 0..15 {
                let k = ComplementComplex::new(random_pairs(d, 9, seed).unwrap()).unwrap();
                let census = k.census(BUDGET).unwrap();
                assert_eq!(census.parity, Parity::Even, "d={d} seed={seed}");
                assert_eq!(census.count, enumerate_pdcs(k.config(), BUDGET).unwrap().len());
                if d <= 2 {
                    assert!(k.is_downward_closed(BUDGET).unwrap());
                    let dim = k.dimension(BUDGET).unwrap();
                    assert!(dim.is_none_or(|x| x <= d), "d={d} dim={dim:?}");
                    if census.count > 0 {
                        assert_eq!(dim, Some(d));
                    }
                }
            }
        }
    }

    #[test]
    fn census_json() {
        let s = serde_json::to_string(&Census::new(4)).unwrap();
        assert_eq!(s, r#"{"count":4,"parity":"even"}"#);
    }
}
