//! Maximum bipartite matching by augmenting paths, with a Hall violator
//! recovered from the alternating reachability set.

use std::collections::VecDeque;

/// A matching between `left` vertices `0..adj.len()` and right vertices
/// `0..right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.left.iter().flatten().count()
    }

    /// Every left vertex is matched.
    pub fn is_left_perfect(&self) -> bool {
        self.left.iter().all(Option::is_some)
    }
}

/// Maximum matching of the bipartite graph whose left vertex `u` is adjacent
/// to the right vertices `adj[u]`.
pub fn max_matching(adj: &[Vec<usize>], right: usize) -> Matching {
    let mut m = Matching {
        left: vec![None; adj.len()],
        right: vec![None; right],
    };
    for u in 0..adj.len() {
        let mut seen = vec![false; right];
        augment(u, adj, &mut m, &mut seen);
    }
    m
}

fn augment(u: usize, adj: &[Vec<usize>], m: &mut Matching, seen: &mut [bool]) -> bool {
    for &v in &adj[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        let free = match m.right[v] {
            None => true,
            Some(w) => augment(w, adj, m, seen),
        };
        if free {
            m.left[u] = Some(v);
            m.right[v] = Some(u);
            return true;
        }
    }
    false
}

/// A left set `X` with `|N(X)| = |X| - 1`, if `m` is maximum and leaves some
/// left vertex unmatched. Returned sorted.
///
/// Starting from one unmatched left vertex, alternating paths reach only
/// matched right vertices; their partners together with the start form `X`.
pub fn hall_violator(adj: &[Vec<usize>], m: &Matching) -> Option<Vec<usize>> {
    let start = m.left.iter().position(Option::is_none)?;
    let mut in_x = vec![false; adj.len()];
    let mut seen = vec![false; m.right.len()];
    in_x[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            let w = m.right[v]?;
            if !in_x[w] {
                in_x[w] = true;
                queue.push_back(w);
            }
        }
    }
    Some((0..adj.len()).filter(|&u| in_x[u]).collect())
}

/// Right neighbourhood of a left set.
pub fn neighbourhood(adj: &[Vec<usize>], set: &[usize], right: usize) -> Vec<usize> {
    let mut hit = vec![false; right];
    for &u in set {
        for &v in &adj[u] {
            hit[v] = true;
        }
    }
    (0..right).filter(|&v| hit[v]).collect()
}
