//! Direct solvers for the source problems of the gadgets, for checking them.

use super::{CnfFormula, ExactCoverInstance};
use crate::algorithms::BipartiteGraph;

/// Number of satisfying assignments, by truth table. Panics beyond 24 variables.
pub fn count_models(f: &CnfFormula) -> u64 {
    assert!(f.num_vars() <= 24, "too many variables for a truth table");
    (0..1u64 << f.num_vars()).filter(|&a| f.satisfied_by(a)).count() as u64
}

/// Number of subfamilies covering every element exactly once. Panics beyond 24 sets.
pub fn count_exact_covers(i: &ExactCoverInstance) -> u64 {
    let n = i.sets().len();
    assert!(n <= 24, "too many sets for subset search");
    let index = |x: &String| i.universe().iter().position(|u| u == x).expect("element in universe");
    let masks: Vec<u64> = i.sets().iter().map(|s| s.iter().fold(0u64, |m, x| m | 1 << index(x))).collect();
    let full = (1u64 << i.universe().len()) - 1;
    (0..1u64 << n)
        .filter(|&chosen| {
            let mut acc = 0u64;
            for (k, &m) in masks.iter().enumerate() {
                if chosen >> k & 1 == 1 {
                    if acc & m != 0 {
                        return false;
                    }
                    acc |= m;
                }
            }
            acc == full
        })
        .count() as u64
}

/// Number of perfect matchings, as the permanent of the biadjacency matrix by
/// expansion along rows.
pub fn count_perfect_matchings(g: &BipartiteGraph) -> u64 {
    if g.left() != g.right() {
        return 0;
    }
    let n = g.left();
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        adj[u][v] = true;
    }
    fn go(row: usize, used: &mut [bool], adj: &[Vec<bool>]) -> u64 {
        if row == adj.len() {
            return 1;
        }
        let mut total = 0;
        for col in 0..adj.len() {
            if adj[row][col] && !used[col] {
                used[col] = true;
                total += go(row + 1, used, adj);
                used[col] = false;
            }
        }
        total
    }
    go(0, &mut vec![false; n], &adj)
}
