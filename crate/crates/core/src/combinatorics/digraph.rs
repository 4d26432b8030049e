//! Colorful circuits and colorful s-t paths in digraphs whose arcs are
//! colored by a family of arc-disjoint circuits or paths.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::matching::{hall_violator, max_matching};
use crate::error::{Error, Result};

/// Directed multigraph on vertices `0..n`; arc ids are positions in `arcs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Digraph {
    pub n: usize,
    pub arcs: Vec<(usize, usize)>,
}

/// A family of arc-id sets, one per color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcFamily {
    pub members: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        let g = Digraph { n, arcs };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        match self.arcs.iter().position(|&(u, v)| u >= self.n || v >= self.n) {
            Some(a) => Err(Error::InvalidFamily(format!("arc {a} has an endpoint out of range"))),
            None => Ok(()),
        }
    }

    pub fn tail(&self, arc: usize) -> usize {
        self.arcs[arc].0
    }

    pub fn head(&self, arc: usize) -> usize {
        self.arcs[arc].1
    }

    fn known(&self, arcs: &[usize]) -> bool {
        arcs.iter().all(|&a| a < self.arcs.len())
    }

    /// The arcs form one directed cycle (a loop counts).
    pub fn is_circuit(&self, arcs: &[usize]) -> bool {
        if arcs.is_empty() || !self.known(arcs) {
            return false;
        }
        let mut out = vec![None; self.n];
        let mut indeg = vec![0usize; self.n];
        for &a in arcs {
            let (u, v) = self.arcs[a];
            if out[u].is_some() {
                return false;
            }
            out[u] = Some(a);
            indeg[v] += 1;
        }
        if indeg.iter().any(|&k| k > 1) {
            return false;
        }
        // every tail has one out-arc and every head one in-arc; require a single orbit
        let start = self.tail(arcs[0]);
        let mut v = start;
        let mut steps = 0;
        loop {
            let Some(a) = out[v] else { return false };
            v = self.head(a);
            steps += 1;
            if v == start {
                return steps == arcs.len();
            }
            if steps > arcs.len() {
                return false;
            }
        }
    }

    /// The arcs, in any order, form a simple directed path from `s` to `t`.
    pub fn is_st_path(&self, s: usize, t: usize, arcs: &[usize]) -> bool {
        if !self.known(arcs) || s >= self.n || t >= self.n || s == t {
            return false;
        }
        let mut out = vec![None; self.n];
        for &a in arcs {
            let u = self.tail(a);
            if out[u].is_some() {
                return false;
            }
            out[u] = Some(a);
        }
        let mut visited = vec![false; self.n];
        let mut v = s;
        let mut used = 0;
        while v != t {
            if visited[v] {
                return false;
            }
            visited[v] = true;
            let Some(a) = out[v] else { return false };
            v = self.head(a);
            used += 1;
        }
        used == arcs.len()
    }

    fn vertices_of(&self, arcs: &[usize]) -> Vec<bool> {
        let mut on = vec![false; self.n];
        for &a in arcs {
            on[self.tail(a)] = true;
            on[self.head(a)] = true;
        }
        on
    }
}

impl ArcFamily {
    pub fn new(members: Vec<Vec<usize>>) -> Self {
        ArcFamily { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// No arc id occurs twice across (or within) members.
    pub fn is_arc_disjoint(&self, arc_count: usize) -> bool {
        let mut used = vec![false; arc_count];
        for &a in self.members.iter().flatten() {
            if a >= arc_count || used[a] {
                return false;
            }
            used[a] = true;
        }
        true
    }

    /// Largest number of arcs `arcs` shares with a single member.
    pub fn max_shared(&self, arcs: &[usize]) -> usize {
        self.members
            .iter()
            .map(|m| arcs.iter().filter(|a| m.contains(a)).count())
            .max()
            .unwrap_or(0)
    }
}

fn check_family(g: &Digraph, family: &ArcFamily) -> Result<()> {
    g.validate()?;
    if !family.is_arc_disjoint(g.arcs.len()) {
        return Err(Error::InvalidFamily("members are not arc-disjoint".into()));
    }
    Ok(())
}

/// A circuit sharing at most one arc with each of `n` pairwise arc-disjoint
/// circuits of a digraph on `n` vertices. Arcs are returned in cycle order.
///
/// Vertices are matched to the circuits through them. A perfect matching
/// lets every vertex take an in-arc from its own circuit, and following
/// in-arcs closes a cycle. Otherwise a Hall-deficient vertex set `X` is
/// deleted together with every circuit touching it, which leaves more
/// circuits than vertices, and the search repeats on the rest.
pub fn colorful_circuit(g: &Digraph, circuits: &ArcFamily) -> Result<Vec<usize>> {
    check_family(g, circuits)?;
    if circuits.len() != g.n {
        return Err(Error::InvalidFamily(format!(
            "{} circuits for {} vertices",
            circuits.len(),
            g.n
        )));
    }
    if let Some(i) = circuits.members.iter().position(|c| !g.is_circuit(c)) {
        return Err(Error::InvalidFamily(format!("member {i} is not a circuit")));
    }
    let mut alive_vertex = vec![true; g.n];
    let mut alive_circuit = vec![true; circuits.len()];
    let on: Vec<Vec<bool>> = circuits.members.iter().map(|c| g.vertices_of(c)).collect();
    loop {
        let verts: Vec<usize> = (0..g.n).filter(|&v| alive_vertex[v]).collect();
        let circs: Vec<usize> = (0..circuits.len()).filter(|&c| alive_circuit[c]).collect();
        if verts.is_empty() {
            return Err(Error::InvalidFamily("Hall reduction removed every vertex".into()));
        }
        let adj: Vec<Vec<usize>> = verts
            .iter()
            .map(|&v| (0..circs.len()).filter(|&j| on[circs[j]][v]).collect())
            .collect();
        let m = max_matching(&adj, circs.len());
        if m.is_left_perfect() {
            let mut in_arc = vec![None; g.n];
            for (k, &v) in verts.iter().enumerate() {
                let c = circs[m.left[k].unwrap()];
                in_arc[v] = circuits.members[c].iter().copied().find(|&a| g.head(a) == v);
            }
            return Ok(close_cycle(g, &in_arc, verts[0]));
        }
        let x = hall_violator(&adj, &m).expect("maximum matching that is not perfect");
        for &k in &x {
            alive_vertex[verts[k]] = false;
        }
        for &c in &circs {
            if x.iter().any(|&k| on[c][verts[k]]) {
                alive_circuit[c] = false;
            }
        }
    }
}

/// Walks backwards along the chosen in-arcs until a vertex repeats and
/// returns the cycle found, in forward order.
fn close_cycle(g: &Digraph, in_arc: &[Option<usize>], start: usize) -> Vec<usize> {
    let mut pos = vec![usize::MAX; g.n];
    let mut walk = Vec::new();
    let mut v = start;
    while pos[v] == usize::MAX {
        pos[v] = walk.len();
        let a = in_arc[v].expect("in-arc for every live vertex");
        walk.push(a);
        v = g.tail(a);
    }
    let mut cycle = walk[pos[v]..].to_vec();
    cycle.reverse();
    cycle
}

/// An s-t path sharing at most one arc with each of `n-1` pairwise
/// arc-disjoint s-t paths of a digraph on `n` vertices.
///
/// An arborescence is grown from `s`: step `i` adds an arc of path `i`
/// leaving the current vertex set, which exists while `t` is outside. The
/// tree path to `t` is returned in order.
pub fn colorful_path(g: &Digraph, s: usize, t: usize, paths: &ArcFamily) -> Result<Vec<usize>> {
    check_family(g, paths)?;
    if g.n < 2 || paths.len() + 1 != g.n {
        return Err(Error::InvalidFamily(format!(
            "{} paths for {} vertices",
            paths.len(),
            g.n
        )));
    }
    if let Some(i) = paths.members.iter().position(|p| !g.is_st_path(s, t, p)) {
        return Err(Error::InvalidFamily(format!("member {i} is not an s-t path")));
    }
    let mut in_tree = vec![false; g.n];
    let mut parent = vec![None; g.n];
    in_tree[s] = true;
    for p in &paths.members {
        if in_tree[t] {
            break;
        }
        let a = p
            .iter()
            .copied()
            .find(|&a| in_tree[g.tail(a)] && !in_tree[g.head(a)])
            .expect("an s-t path leaves every set containing s but not t");
        in_tree[g.head(a)] = true;
        parent[g.head(a)] = Some(a);
    }
    let mut path = Vec::new();
    let mut v = t;
    while v != s {
        let a = parent[v].ok_or_else(|| Error::InvalidFamily("t not reached".into()))?;
        path.push(a);
        v = g.tail(a);
    }
    path.reverse();
    Ok(path)
}

/// Random instance for [`colorful_circuit`]: `n` vertices and `n` circuits on
/// fresh arcs through random vertex sequences of length `1..=max_len`.
pub fn random_circuit_instance(n: usize, max_len: usize, seed: u64) -> (Digraph, ArcFamily) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    let mut members = Vec::new();
    let verts: Vec<usize> = (0..n).collect();
    for _ in 0..n {
        let len = rng.random_range(1..=max_len.clamp(1, n));
        let cyc: Vec<usize> = verts.choose_multiple(&mut rng, len).copied().collect();
        let mut ids = Vec::new();
        for k in 0..len {
            ids.push(arcs.len());
            arcs.push((cyc[k], cyc[(k + 1) % len]));
        }
        members.push(ids);
    }
    let mut order: Vec<usize> = (0..arcs.len()).collect();
    order.shuffle(&mut rng);
    relabel(n, arcs, members, &order)
}

/// Random instance for [`colorful_path`] with `s = 0`, `t = n-1` and `n-1`
/// paths on fresh arcs through random sequences of intermediate vertices.
pub fn random_path_instance(n: usize, seed: u64) -> (Digraph, ArcFamily) {
    assert!(n >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inner: Vec<usize> = (1..n - 1).collect();
    let mut arcs = Vec::new();
    let mut members = Vec::new();
    for _ in 0..n - 1 {
        let k = rng.random_range(0..=inner.len());
        let mut seq = vec![0];
        seq.extend(inner.choose_multiple(&mut rng, k).copied());
        seq.push(n - 1);
        let mut ids = Vec::new();
        for w in seq.windows(2) {
            ids.push(arcs.len());
            arcs.push((w[0], w[1]));
        }
        members.push(ids);
    }
    let mut order: Vec<usize> = (0..arcs.len()).collect();
    order.shuffle(&mut rng);
    relabel(n, arcs, members, &order)
}

/// Permutes arc ids so members are not contiguous ranges.
fn relabel(
    n: usize,
    arcs: Vec<(usize, usize)>,
    members: Vec<Vec<usize>>,
    order: &[usize],
) -> (Digraph, ArcFamily) {
    let mut new_id = vec![0; arcs.len()];
    let mut new_arcs = vec![(0, 0); arcs.len()];
    for (pos, &old) in order.iter().enumerate() {
        new_id[old] = pos;
        new_arcs[pos] = arcs[old];
    }
    let members = members
        .into_iter()
        .map(|m| m.into_iter().map(|a| new_id[a]).collect())
        .collect();
    (Digraph { n, arcs: new_arcs }, ArcFamily { members })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vertex_circuits_pick_one_arc_each() {
        // a=(0,1), b=(1,0), a'=(0,1), b'=(1,0)
        let g = Digraph::new(2, vec![(0, 1), (1, 0), (0, 1), (1, 0)]).unwrap();
        let f = ArcFamily::new(vec![vec![0, 1], vec![2, 3]]);
        let c = colorful_circuit(&g, &f).unwrap();
        assert!(g.is_circuit(&c));
        assert_eq!(c.len(), 2);
        assert_eq!(f.max_shared(&c), 1);
    }

    #[test]
    fn vertex_on_no_circuit_triggers_reduction() {
        // vertex 2 is isolated; both circuits live on {0, 1}
        let g = Digraph::new(3, vec![(0, 1), (1, 0), (0, 0), (1, 1), (0, 1), (1, 0)]).unwrap();
        let f = ArcFamily::new(vec![vec![0, 1], vec![2], vec![4, 5]]);
        let c = colorful_circuit(&g, &f).unwrap();
        assert!(g.is_circuit(&c));
        assert!(f.max_shared(&c) <= 1);
    }

    #[test]
    fn rejects_bad_families() {
        let g = Digraph::new(2, vec![(0, 1), (1, 0)]).unwrap();
        let shared = ArcFamily::new(vec![vec![0, 1], vec![0, 1]]);
        assert!(matches!(colorful_circuit(&g, &shared), Err(Error::InvalidFamily(_))));
        let not_circuit = ArcFamily::new(vec![vec![0], vec![1]]);
        assert!(matches!(colorful_circuit(&g, &not_circuit), Err(Error::InvalidFamily(_))));
        assert!(Digraph::new(2, vec![(0, 2)]).is_err());
    }

    #[test]
    fn circuit_predicate() {
        let g = Digraph::new(3, vec![(0, 1), (1, 2), (2, 0), (1, 0), (0, 0)]).unwrap();
        assert!(g.is_circuit(&[2, 0, 1]));
        assert!(g.is_circuit(&[0, 3]));
        assert!(g.is_circuit(&[4]));
        assert!(!g.is_circuit(&[0, 1]));
        assert!(!g.is_circuit(&[0, 3, 4]));
        assert!(!g.is_circuit(&[]));
    }

    #[test]
    fn three_vertex_path_example() {
        // s=0, x=1, t=2; P1 = s->x->t, P2 = s->t
        let g = Digraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let f = ArcFamily::new(vec![vec![0, 1], vec![2]]);
        let p = colorful_path(&g, 0, 2, &f).unwrap();
        assert_eq!(p, vec![2]);
        assert!(g.is_st_path(0, 2, &p));
    }

    #[test]
    fn path_predicate() {
        let g = Digraph::new(3, vec![(0, 1), (1, 2), (0, 2), (1, 0)]).unwrap();
        assert!(g.is_st_path(0, 2, &[1, 0]));
        assert!(!g.is_st_path(0, 2, &[0]));
        assert!(!g.is_st_path(0, 2, &[0, 3, 2]));
    }

    #[test]
    fn random_circuit_instances_verify() {
        for seed in 0..100 {
            let n = 2 + (seed as usize % 9);
            let (g, f) = random_circuit_instance(n, 4, seed);
            let c = colorful_circuit(&g, &f).unwrap();
            assert!(g.is_circuit(&c), "seed {seed}");
            assert!(f.max_shared(&c) <= 1, "seed {seed}");
        }
    }

    #[test]
    fn random_path_instances_verify() {
        for seed in 0..100 {
            let n = 2 + (seed as usize % 9);
            let (g, f) = random_path_instance(n, seed);
            let p = colorful_path(&g, 0, n - 1, &f).unwrap();
            assert!(g.is_st_path(0, n - 1, &p), "seed {seed}");
            assert!(f.max_shared(&p) <= 1, "seed {seed}");
        }
    }
}
