use std::collections::VecDeque;

/// Bipartite graph with `left` and `right` vertices numbered from 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    edges: Vec<(usize, usize)>,
}

/// A maximum matching: `pair_left[u]` is the right vertex matched to `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub size: usize,
    pub pair_left: Vec<Option<usize>>,
}

impl BipartiteGraph {
    /// Panics if an edge endpoint is out of range.
    pub fn new(left: usize, right: usize, edges: Vec<(usize, usize)>) -> Self {
        for &(u, v) in &edges {
            assert!(u < left && v < right, "edge ({u}, {v}) out of range");
        }
        BipartiteGraph { left, right, edges }
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Complete bipartite graph `K_{n,n}`.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).collect();
        BipartiteGraph::new(n, n, edges)
    }

    /// Hopcroft-Karp.
    pub fn max_matching(&self) -> Matching {
        let mut adj = vec![Vec::new(); self.left];
        for &(u, v) in &self.edges {
            adj[u].push(v);
        }
        let mut pair_left: Vec<Option<usize>> = vec![None; self.left];
        let mut pair_right: Vec<Option<usize>> = vec![None; self.right];
        let mut dist = vec![usize::MAX; self.left];
        let mut size = 0;
        loop {
            // BFS layering from free left vertices
            let mut queue = VecDeque::new();
            for u in 0..self.left {
                if pair_left[u].is_none() {
                    dist[u] = 0;
                    queue.push_back(u);
                } else {
                    dist[u] = usize::MAX;
                }
            }
            let mut found = false;
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    match pair_right[v] {
                        None => found = true,
                        Some(u2) if dist[u2] == usize::MAX => {
                            dist[u2] = dist[u] + 1;
                            queue.push_back(u2);
                        }
                        Some(_) => {}
                    }
                }
            }
            if !found {
                break;
            }
            let mut next_edge = vec![0; self.left];
            for u in 0..self.left {
                if pair_left[u].is_none()
                    && augment(u, &adj, &mut pair_left, &mut pair_right, &mut dist, &mut next_edge)
                {
                    size += 1;
                }
            }
        }
        Matching { size, pair_left }
    }

    /// Whether both parts have the same size and a matching covers all vertices.
    pub fn has_perfect_matching(&self) -> bool {
        self.left == self.right && self.max_matching().size == self.left
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    pair_left: &mut [Option<usize>],
    pair_right: &mut [Option<usize>],
    dist: &mut [usize],
    next_edge: &mut [usize],
) -> bool {
    while next_edge[u] < adj[u].len() {
        let v = adj[u][next_edge[u]];
        next_edge[u] += 1;
        let ok = match pair_right[v] {
            None => true,
            Some(u2) => {
                dist[u2] == dist[u].wrapping_add(1) && augment(u2, adj, pair_left, pair_right, dist, next_edge)
            }
        };
        if ok {
            pair_left[u] = Some(v);
            pair_right[v] = Some(u);
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_max(g: &BipartiteGraph) -> usize {
        fn go(g: &BipartiteGraph, u: usize, used: &mut Vec<bool>) -> usize {
            if u == g.left {
                return 0;
            }
            let mut best = go(g, u + 1, used);
            for &(a, b) in &g.edges {
                if a == u && !used[b] {
                    used[b] = true;
                    best = best.max(1 + go(g, u + 1, used));
                    used[b] = false;
                }
            }
            best
        }
        go(g, 0, &mut vec![false; g.right])
    }

    #[test]
    fn small_cases() {
        assert!(BipartiteGraph::complete(2).has_perfect_matching());
        assert!(!BipartiteGraph::new(2, 1, vec![(0, 0)]).has_perfect_matching());
        assert!(!BipartiteGraph::new(2, 2, vec![(0, 0), (1, 0)]).has_perfect_matching());
        assert!(BipartiteGraph::new(0, 0, vec![]).has_perfect_matching());
    }

    #[test]
    fn matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let l = rng.gen_range(0..6);
            let r = rng.gen_range(0..6);
            let edges: Vec<_> =
                (0..l).flat_map(|u| (0..r).map(move |v| (u, v))).filter(|_| rng.gen_bool(0.35)).collect();
            let g = BipartiteGraph::new(l, r, edges);
            let m = g.max_matching();
            assert_eq!(m.size, brute_max(&g), "{g:?}");
            let mut seen = vec![false; r];
            for (u, v) in m.pair_left.iter().enumerate() {
                if let Some(v) = *v {
                    assert!(g.edges.contains(&(u, v)) && !seen[v]);
                    seen[v] = true;
                }
            }
        }
    }
}
