//! Independence-oracle matroids, colorful bases and matroid intersection.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{self, Rational};

/// A matroid on the ground set `0..ground_size()` given by an independence
/// oracle.
pub trait Matroid {
    fn ground_size(&self) -> usize;

    /// Whether `set` (distinct elements) is independent.
    fn is_independent(&self, set: &[usize]) -> bool;

    /// Rank of `set`, computed greedily.
    fn rank_of(&self, set: &[usize]) -> usize {
        let mut basis = Vec::new();
        for &e in set {
            basis.push(e);
            if !self.is_independent(&basis) {
                basis.pop();
            }
        }
        basis.len()
    }

    fn rank(&self) -> usize {
        let all: Vec<usize> = (0..self.ground_size()).collect();
        self.rank_of(&all)
    }
}

impl<M: Matroid + ?Sized> Matroid for &M {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        (**self).is_independent(set)
    }
}

/// `U_{rank,n}`: every set of at most `rank` elements is independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformMatroid {
    pub n: usize,
    pub rank: usize,
}

impl Matroid for UniformMatroid {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        set.len() <= self.rank
    }
}

/// Element `e` belongs to class `class_of[e]`, which holds at most
/// `capacity[class]` elements of an independent set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionMatroid {
    pub class_of: Vec<usize>,
    pub capacity: Vec<usize>,
}

impl PartitionMatroid {
    /// Every class has capacity one.
    pub fn unit(class_of: Vec<usize>) -> Self {
        let classes = class_of.iter().map(|&c| c + 1).max().unwrap_or(0);
        PartitionMatroid {
            class_of,
            capacity: vec![1; classes],
        }
    }
}

impl Matroid for PartitionMatroid {
    fn ground_size(&self) -> usize {
        self.class_of.len()
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        let mut used = vec![0usize; self.capacity.len()];
        for &e in set {
            let c = self.class_of[e];
            used[c] += 1;
            if used[c] > self.capacity[c] {
                return false;
            }
        }
        true
    }
}

/// Edge sets of a multigraph on `0..vertices` that contain no cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphicMatroid {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Matroid for GraphicMatroid {
    fn ground_size(&self) -> usize {
        self.edges.len()
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &e in set {
            let (u, v) = self.edges[e];
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }
}

/// Linearly independent subsets of a list of rational vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearMatroid {
    #[serde(with = "rational::serde_matrix")]
    pub vectors: Vec<Vec<Rational>>,
}

impl Matroid for LinearMatroid {
    fn ground_size(&self) -> usize {
        self.vectors.len()
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        let rows: Vec<Vec<Rational>> = set.iter().map(|&e| self.vectors[e].clone()).collect();
        linalg::rank(&rows) == set.len()
    }
}

/// `inner` with the elements of `removed` deleted (they become dependent).
#[derive(Debug, Clone)]
pub struct Deletion<M> {
    pub inner: M,
    pub removed: Vec<usize>,
}

impl<M: Matroid> Matroid for Deletion<M> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        !set.iter().any(|e| self.removed.contains(e)) && self.inner.is_independent(set)
    }
}

/// Any of the concrete realizations, tagged by `kind` in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AnyMatroid {
    Uniform(UniformMatroid),
    Partition(PartitionMatroid),
    Graphic(GraphicMatroid),
    Linear(LinearMatroid),
}

impl Matroid for AnyMatroid {
    fn ground_size(&self) -> usize {
        match self {
            AnyMatroid::Uniform(m) => m.ground_size(),
            AnyMatroid::Partition(m) => m.ground_size(),
            AnyMatroid::Graphic(m) => m.ground_size(),
            AnyMatroid::Linear(m) => m.ground_size(),
        }
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        match self {
            AnyMatroid::Uniform(m) => m.is_independent(set),
            AnyMatroid::Partition(m) => m.is_independent(set),
            AnyMatroid::Graphic(m) => m.is_independent(set),
            AnyMatroid::Linear(m) => m.is_independent(set),
        }
    }
}

/// Spot-checks the independence axioms on `samples` random pairs of
/// independent sets: the empty set is independent, subsets of independent
/// sets are independent, and a smaller independent set extends from a larger
/// one. Returns a description of the first violation.
pub fn check_axioms<M: Matroid, R: Rng>(m: &M, samples: usize, rng: &mut R) -> Result<()> {
    let fail = |what: String| Err(Error::InvalidInput(format!("matroid axiom violated: {what}")));
    if !m.is_independent(&[]) {
        return fail("empty set dependent".into());
    }
    let n = m.ground_size();
    let random_independent = |rng: &mut R| {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let stop = rng.random_range(0..=n);
        let mut set = Vec::new();
        for &e in &order[..stop] {
            set.push(e);
            if !m.is_independent(&set) {
                set.pop();
            }
        }
        set
    };
    for _ in 0..samples {
        let i = random_independent(rng);
        let j = random_independent(rng);
        for k in 0..i.len() {
            let mut sub = i.clone();
            sub.remove(k);
            if !m.is_independent(&sub) {
                return fail(format!("{sub:?} is a dependent subset of {i:?}"));
            }
        }
        let (small, large) = if i.len() < j.len() { (i, j) } else { (j, i) };
        if small.len() < large.len() {
            let extends = large.iter().filter(|e| !small.contains(e)).any(|&e| {
                let mut s = small.clone();
                s.push(e);
                m.is_independent(&s)
            });
            if !extends {
                return fail(format!("{small:?} cannot be extended from {large:?}"));
            }
        }
    }
    Ok(())
}

fn color_classes(coloring: &[usize], colors: usize) -> Vec<Vec<usize>> {
    let mut classes = vec![Vec::new(); colors];
    for (e, &c) in coloring.iter().enumerate() {
        classes[c].push(e);
    }
    classes
}

fn color_count(coloring: &[usize]) -> usize {
    coloring.iter().map(|&c| c + 1).max().unwrap_or(0)
}

fn check_coloring<M: Matroid>(m: &M, coloring: &[usize]) -> Result<()> {
    if coloring.len() != m.ground_size() {
        return Err(Error::DimensionOrEmpty(format!(
            "{} colors for a ground set of {}",
            coloring.len(),
            m.ground_size()
        )));
    }
    Ok(())
}

/// Whether `set` is a basis of `m` with one element of each of the `d =
/// rank(m)` colors.
pub fn is_colorful_basis<M: Matroid>(m: &M, coloring: &[usize], set: &[usize]) -> bool {
    let d = m.rank();
    let mut seen = vec![false; color_count(coloring)];
    for &e in set {
        if e >= coloring.len() || seen[coloring[e]] {
            return false;
        }
        seen[coloring[e]] = true;
    }
    set.len() == d && seen.len() == d && m.is_independent(set)
}

/// A basis with one element of each color, for a matroid of rank `d` whose
/// `d` color classes each contain a basis.
///
/// Colors are scanned in order and each contributes its first element that
/// keeps the partial set independent.
pub fn greedy_colorful_basis<M: Matroid>(m: &M, coloring: &[usize]) -> Result<Vec<usize>> {
    check_coloring(m, coloring)?;
    let d = m.rank();
    let colors = color_count(coloring);
    if colors != d {
        return Err(Error::hypothesis(
            colors.min(d),
            format!("{colors} colors for a matroid of rank {d}"),
        ));
    }
    let classes = color_classes(coloring, colors);
    if let Some(c) = classes.iter().position(|cls| m.rank_of(cls) < d) {
        return Err(Error::hypothesis(c, format!("color {c} has rank below {d}")));
    }
    let mut basis = Vec::with_capacity(d);
    for cls in &classes {
        let pick = cls
            .iter()
            .copied()
            .find(|&e| {
                basis.push(e);
                let ok = m.is_independent(&basis);
                basis.pop();
                ok
            })
            .expect("a color of full rank extends any smaller independent set");
        basis.push(pick);
    }
    Ok(basis)
}

/// A maximum-cardinality common independent set of two matroids on the same
/// ground set, by shortest augmenting paths in the exchange graph.
pub fn matroid_intersection<M1: Matroid, M2: Matroid>(m1: &M1, m2: &M2) -> Vec<usize> {
    let n = m1.ground_size();
    assert_eq!(n, m2.ground_size(), "matroids on different ground sets");
    let mut in_set = vec![false; n];
    loop {
        let current: Vec<usize> = (0..n).filter(|&e| in_set[e]).collect();
        let with = |x: usize| {
            let mut s = current.clone();
            s.push(x);
            s
        };
        let swap = |y: usize, x: usize| {
            let mut s: Vec<usize> = current.iter().copied().filter(|&e| e != y).collect();
            s.push(x);
            s
        };
        let outside: Vec<usize> = (0..n).filter(|&e| !in_set[e]).collect();
        let sources: Vec<usize> = outside.iter().copied().filter(|&x| m1.is_independent(&with(x))).collect();
        let sinks: Vec<bool> = {
            let mut t = vec![false; n];
            for &x in &outside {
                t[x] = m2.is_independent(&with(x));
            }
            t
        };
        // arcs y -> x when I - y + x is independent in m1, x -> y when in m2
        let mut prev = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &x in &sources {
            seen[x] = true;
            queue.push_back(x);
        }
        let mut end = None;
        while let Some(u) = queue.pop_front() {
            if !in_set[u] && sinks[u] {
                end = Some(u);
                break;
            }
            if in_set[u] {
                for &x in &outside {
                    if !seen[x] && m1.is_independent(&swap(u, x)) {
                        seen[x] = true;
                        prev[x] = u;
                        queue.push_back(x);
                    }
                }
            } else {
                for &y in &current {
                    if !seen[y] && m2.is_independent(&swap(y, u)) {
                        seen[y] = true;
                        prev[y] = u;
                        queue.push_back(y);
                    }
                }
            }
        }
        let Some(mut v) = end else {
            return current;
        };
        loop {
            in_set[v] = !in_set[v];
            if prev[v] == usize::MAX {
                break;
            }
            v = prev[v];
        }
    }
}

/// A colorful basis other than `given`, for a loopless matroid of rank `d`
/// with `d` colors of at least two elements each.
///
/// For each `e` of `given` in turn, the matroid with `e` deleted is
/// intersected with the unit partition matroid of the colors; the first
/// intersection of size `d` is returned.
pub fn another_colorful_basis<M: Matroid>(m: &M, coloring: &[usize], given: &[usize]) -> Result<Vec<usize>> {
    check_coloring(m, coloring)?;
    let d = m.rank();
    let colors = color_count(coloring);
    if colors != d {
        return Err(Error::hypothesis(
            colors.min(d),
            format!("{colors} colors for a matroid of rank {d}"),
        ));
    }
    if let Some(e) = (0..m.ground_size()).find(|&e| !m.is_independent(&[e])) {
        return Err(Error::hypothesis(coloring[e], format!("element {e} is a loop")));
    }
    let classes = color_classes(coloring, colors);
    if let Some(c) = classes.iter().position(|cls| cls.len() < 2) {
        return Err(Error::hypothesis(c, format!("color {c} has fewer than two elements")));
    }
    if !is_colorful_basis(m, coloring, given) {
        return Err(Error::InvalidInput("given set is not a colorful basis".into()));
    }
    let colors_matroid = PartitionMatroid::unit(coloring.to_vec());
    for &e in given {
        let deleted = Deletion {
            inner: m,
            removed: vec![e],
        };
        let mut found = matroid_intersection(&deleted, &colors_matroid);
        if found.len() == d {
            found.sort_by_key(|&x| coloring[x]);
            return Ok(found);
        }
    }
    Err(Error::hypothesis(
        0,
        "no second colorful basis; the independence oracle is not a matroid",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn brute_common(m1: &impl Matroid, m2: &impl Matroid) -> usize {
        let n = m1.ground_size();
        (0u32..1 << n)
            .filter_map(|mask| {
                let s: Vec<usize> = (0..n).filter(|&e| mask >> e & 1 == 1).collect();
                (m1.is_independent(&s) && m2.is_independent(&s)).then_some(s.len())
            })
            .max()
            .unwrap()
    }

    fn colorful_bases(m: &impl Matroid, coloring: &[usize]) -> usize {
        let n = m.ground_size();
        (0u32..1 << n)
            .filter(|&mask| {
                let s: Vec<usize> = (0..n).filter(|&e| mask >> e & 1 == 1).collect();
                is_colorful_basis(m, coloring, &s)
            })
            .count()
    }

    fn random_graphic(rng: &mut ChaCha8Rng) -> GraphicMatroid {
        let vertices = rng.random_range(2..6);
        let edges = (0..rng.random_range(1..11))
            .map(|_| {
                let u = rng.random_range(0..vertices);
                let mut v = rng.random_range(0..vertices - 1);
                if v >= u {
                    v += 1;
                }
                (u, v)
            })
            .collect();
        GraphicMatroid { vertices, edges }
    }

    #[test]
    fn uniform_transversal_is_a_basis() {
        let m = UniformMatroid { n: 4, rank: 2 };
        let coloring = [0, 0, 1, 1];
        assert_eq!(greedy_colorful_basis(&m, &coloring).unwrap(), vec![0, 2]);
        let other = another_colorful_basis(&m, &coloring, &[0, 2]).unwrap();
        assert!([vec![0, 3], vec![1, 2], vec![1, 3]].contains(&other));
    }

    #[test]
    fn rainbow_spanning_tree() {
        // triangle 0-1-2 with pendant 3 attached to 2; three colors, each a spanning tree
        let edges = vec![
            (0, 1), (1, 2), (2, 3),
            (1, 2), (2, 0), (3, 2),
            (0, 2), (0, 1), (2, 3),
        ];
        let m = GraphicMatroid { vertices: 4, edges };
        let coloring = [0, 0, 0, 1, 1, 1, 2, 2, 2];
        let b = greedy_colorful_basis(&m, &coloring).unwrap();
        assert!(is_colorful_basis(&m, &coloring, &b));
        let other = another_colorful_basis(&m, &coloring, &b).unwrap();
        assert_ne!(other, b);
        assert!(is_colorful_basis(&m, &coloring, &other));
    }

    #[test]
    fn low_rank_color_is_rejected() {
        let m = UniformMatroid { n: 4, rank: 2 };
        let err = greedy_colorful_basis(&m, &[0, 1, 1, 1]).unwrap_err();
        assert!(matches!(err, Error::HypothesisViolated { color: 0, .. }));
        let lin = LinearMatroid {
            vectors: vec![vec![int(1), int(0)], vec![int(2), int(0)], vec![int(0), int(1)], vec![int(1), int(1)]],
        };
        assert!(matches!(
            greedy_colorful_basis(&lin, &[0, 0, 1, 1]),
            Err(Error::HypothesisViolated { color: 0, .. })
        ));
    }

    #[test]
    fn another_basis_needs_two_per_color() {
        let m = UniformMatroid { n: 3, rank: 2 };
        assert!(another_colorful_basis(&m, &[0, 1, 1], &[0, 1]).is_err());
    }

    #[test]
    fn identical_partition_matroids() {
        let p = PartitionMatroid {
            class_of: vec![0, 0, 1, 2, 2, 2],
            capacity: vec![1, 1, 2],
        };
        let s = matroid_intersection(&p, &p);
        assert_eq!(s.len(), 4);
        assert!(p.is_independent(&s));
    }

    #[test]
    fn bipartite_incidence_matches_matching() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let (r, c) = (rng.random_range(1..5), rng.random_range(1..5));
            let cells: Vec<(usize, usize)> = (0..r)
                .flat_map(|i| (0..c).map(move |j| (i, j)))
                .filter(|_| rng.random_bool(0.4))
                .collect();
            let rows = PartitionMatroid::unit(cells.iter().map(|x| x.0).collect());
            let cols = PartitionMatroid::unit(cells.iter().map(|x| x.1).collect());
            let adj: Vec<Vec<usize>> = (0..r)
                .map(|i| cells.iter().filter(|x| x.0 == i).map(|x| x.1).collect())
                .collect();
            let want = super::super::matching::max_matching(&adj, c).size();
            let got = matroid_intersection(&rows, &cols);
            assert_eq!(got.len(), want);
            assert!(rows.is_independent(&got) && cols.is_independent(&got));
        }
    }

    #[test]
    fn intersection_matches_exhaustive_maximum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let g = random_graphic(&mut rng);
            let n = g.ground_size();
            let classes = rng.random_range(1..5);
            let p = PartitionMatroid {
                class_of: (0..n).map(|_| rng.random_range(0..classes)).collect(),
                capacity: (0..classes).map(|_| rng.random_range(1..3)).collect(),
            };
            let s = matroid_intersection(&g, &p);
            assert!(g.is_independent(&s) && p.is_independent(&s));
            assert_eq!(s.len(), brute_common(&g, &p));
        }
    }

    #[test]
    fn second_basis_exists_whenever_first_does() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut checked = 0;
        while checked < 40 {
            let g = random_graphic(&mut rng);
            let d = g.rank();
            let n = g.ground_size();
            if d == 0 || n < 2 * d || g.edges.iter().any(|(u, v)| u == v) {
                continue;
            }
            let mut coloring: Vec<usize> = (0..n).map(|e| e % d).collect();
            coloring.shuffle(&mut rng);
            let count = colorful_bases(&g, &coloring);
            if count == 0 {
                continue;
            }
            assert!(count >= 2);
            let first = (0u32..1 << n)
                .map(|mask| (0..n).filter(|&e| mask >> e & 1 == 1).collect::<Vec<_>>())
                .find(|s| is_colorful_basis(&g, &coloring, s))
                .unwrap();
            let other = another_colorful_basis(&g, &coloring, &first).unwrap();
            assert!(is_colorful_basis(&g, &coloring, &other));
            let mut sorted = other.clone();
            sorted.sort();
            assert_ne!(sorted, first);
            checked += 1;
        }
    }

    #[test]
    fn axioms_hold_for_realizations_and_catch_a_fake() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = random_graphic(&mut rng);
        assert!(check_axioms(&g, 50, &mut rng).is_ok());
        let lin = LinearMatroid {
            vectors: vec![vec![int(1), int(2)], vec![int(2), int(4)], vec![int(0), int(1)]],
        };
        assert!(check_axioms(&lin, 50, &mut rng).is_ok());

        struct NotAMatroid;
        impl Matroid for NotAMatroid {
            fn ground_size(&self) -> usize {
                4
            }
            fn is_independent(&self, set: &[usize]) -> bool {
                set.len() != 1 || set[0] != 3
            }
        }
        assert!(check_axioms(&NotAMatroid, 200, &mut rng).is_err());
    }

    #[test]
    fn json_tagged_by_kind() {
        let m = AnyMatroid::Uniform(UniformMatroid { n: 4, rank: 2 });
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"kind":"uniform","n":4,"rank":2}"#);
        let lin: AnyMatroid = serde_json::from_str(r#"{"kind":"linear","vectors":[["1","1/2"],["0","3"]]}"#).unwrap();
        assert_eq!(lin.rank(), 2);
    }
}
