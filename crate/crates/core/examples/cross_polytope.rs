//! Fully-labeled facets of a labeled cross-polytope boundary.

use colorful::combinatorics::{crosspolytope_another, crosspolytope_decide, CrossPolytopeLabeling};

fn main() -> colorful::Result<()> {
    let cases = [vec![[0, 0], [1, 1]], vec![[0, 0], [0, 1]], vec![[0, 0], [0, 0]], vec![[2, 0], [1, 2], [0, 0]]];
    for labels in cases {
        let l = CrossPolytopeLabeling::new(labels.clone())?;
        let all = l.brute_force();
        match crosspolytope_decide(&l) {
            Some(f) => {
                let g = crosspolytope_another(&l, &f)?;
                println!("{labels:?}: {} fully labeled, found {f:?}, another {g:?}", all.len());
            }
            None => println!("{labels:?}: none (brute force agrees: {})", all.is_empty()),
        }
    }
    Ok(())
}
