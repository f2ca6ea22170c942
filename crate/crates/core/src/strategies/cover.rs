//! Fewest edges of a saturated final graph that respects a clique cover.

use std::collections::HashSet;

use crate::graph::{binom2, GraphError};

/// Index sets of size `s` drawn from `0..k`.
fn combinations(k: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i + 1, k, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, s, &mut Vec::new(), &mut out);
    out
}

/// Minimum edge count of a complete multipartite graph on `n` vertices with
/// at most `k` classes in which the vertices of each listed clique lie in
/// distinct classes. The remaining vertices are unconstrained.
pub fn min_final_edges_given_cover(clique_sizes: &[usize], n: usize, k: usize) -> Result<usize, GraphError> {
    if k == 0 {
        return Err(GraphError::Parameter("k must be positive".into()));
    }
    if let Some(&s) = clique_sizes.iter().find(|&&s| s > k) {
        return Err(GraphError::Parameter(format!("clique of size {s} exceeds k = {k}")));
    }
    let covered: usize = clique_sizes.iter().sum();
    if covered > n {
        return Err(GraphError::Parameter(format!("cover has {covered} vertices, n = {n}")));
    }
    // Class sizes kept sorted descending; class order does not matter.
    let mut states: HashSet<Vec<usize>> = HashSet::from([vec![0; k]]);
    for &s in clique_sizes {
        let combos = combinations(k, s);
        let mut next = HashSet::with_capacity(states.len() * combos.len());
        for state in &states {
            for combo in &combos {
                let mut t = state.clone();
                combo.iter().for_each(|&i| t[i] += 1);
                t.sort_unstable_by(|a, b| b.cmp(a));
                next.insert(t);
            }
        }
        states = next;
    }
    let free = n - covered;
    // Σ C(c,2) is convex, so free vertices all join the largest class.
    let best = states
        .iter()
        .map(|c| binom2(c[0] + free) + c[1..].iter().map(|&x| binom2(x)).sum::<usize>())
        .max()
        .expect("at least one state");
    Ok(binom2(n) - best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_covers() {
        assert_eq!(min_final_edges_given_cover(&[4], 4, 4).unwrap(), 6);
        assert_eq!(min_final_edges_given_cover(&[3], 3, 4).unwrap(), 3);
        assert_eq!(min_final_edges_given_cover(&[3, 2], 5, 4).unwrap(), 8);
        assert_eq!(min_final_edges_given_cover(&[], 6, 3).unwrap(), 0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(min_final_edges_given_cover(&[5], 6, 4).is_err());
        assert!(min_final_edges_given_cover(&[3, 3], 5, 4).is_err());
        assert!(min_final_edges_given_cover(&[1], 2, 0).is_err());
    }

    /// Every assignment of covered vertices to `k` labelled classes.
    fn brute(sizes: &[usize], n: usize, k: usize) -> usize {
        fn rec(sizes: &[usize], k: usize, classes: &mut Vec<usize>, best: &mut usize, free: usize) {
            let Some((&s, rest)) = sizes.split_first() else {
                if free == 0 {
                    *best = (*best).max(classes.iter().map(|&x| x * x.saturating_sub(1) / 2).sum());
                    return;
                }
                for i in 0..k {
                    classes[i] += 1;
                    rec(&[], k, classes, best, free - 1);
                    classes[i] -= 1;
                }
                return;
            };
            for mask in 0u32..(1 << k) {
                if mask.count_ones() as usize == s {
                    (0..k).filter(|i| mask >> i & 1 == 1).for_each(|i| classes[i] += 1);
                    rec(rest, k, classes, best, free);
                    (0..k).filter(|i| mask >> i & 1 == 1).for_each(|i| classes[i] -= 1);
                }
            }
        }
        let mut best = 0;
        let free = n - sizes.iter().sum::<usize>();
        rec(sizes, k, &mut vec![0; k], &mut best, free);
        n * (n - 1) / 2 - best
    }

    #[test]
    fn matches_brute_force() {
        for (sizes, n) in [(vec![3, 2, 2], 10), (vec![4, 3, 2], 11), (vec![2, 2, 2, 2], 8), (vec![3, 3, 4], 13)] {
            assert_eq!(min_final_edges_given_cover(&sizes, n, 4).unwrap(), brute(&sizes, n, 4), "{sizes:?}");
        }
    }
}
