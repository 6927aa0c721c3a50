//! Independent brute-force oracles shared by the integration tests.
//!
//! Nothing here calls into the enumeration, canonicalization or cycle code of
//! the crate; the oracles work on plain edge lists.

#![allow(dead_code)]

use std::collections::HashSet;

pub type Edges = Vec<(usize, usize)>;

fn normalize(edges: &mut Edges) {
    for e in edges.iter_mut() {
        if e.0 > e.1 {
            *e = (e.1, e.0);
        }
    }
    edges.sort_unstable();
}

pub fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Every perfect matching of the `3n` half-edges, point `p` belonging to
/// vertex `p / 3`, collapsed to a sorted edge multiset. Returns the distinct
/// connected multigraphs.
pub fn pairing_oracle(n: usize) -> HashSet<Edges> {
    fn rec(
        points: &mut Vec<bool>,
        pairs: &mut Vec<(usize, usize)>,
        n: usize,
        out: &mut HashSet<Edges>,
    ) {
        let Some(p) = points.iter().position(|&used| !used) else {
            let mut edges: Edges = pairs.iter().map(|&(a, b)| (a / 3, b / 3)).collect();
            normalize(&mut edges);
            if connected(n, &edges) {
                out.insert(edges);
            }
            return;
        };
        points[p] = true;
        for q in p + 1..points.len() {
            if points[q] {
                continue;
            }
            points[q] = true;
            pairs.push((p, q));
            rec(points, pairs, n, out);
            pairs.pop();
            points[q] = false;
        }
        points[p] = false;
    }
    let mut out = HashSet::new();
    rec(&mut vec![false; 3 * n], &mut Vec::new(), n, &mut out);
    out
}

/// Pairing-model weight of a labelled multigraph relative to `6^n`:
/// each loop halves it and each multiplicity-`m` bundle divides by `m!`.
pub fn pairing_weight(edges: &[(usize, usize)]) -> f64 {
    let mut w = 1.0;
    let mut i = 0;
    while i < edges.len() {
        let mut j = i;
        while j < edges.len() && edges[j] == edges[i] {
            j += 1;
        }
        let m = j - i;
        let fact: f64 = (1..=m).map(|x| x as f64).product();
        w /= fact;
        if edges[i].0 == edges[i].1 {
            w /= 2f64.powi(m as i32);
        }
        i = j;
    }
    w
}

/// Lexicographically minimal sorted edge list over all `n!` relabelings.
pub fn brute_canonical(n: usize, edges: &[(usize, usize)]) -> Edges {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Edges> = None;
    let mut visit = |perm: &[usize]| {
        let mut e: Edges = edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        normalize(&mut e);
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
    };
    // Heap's algorithm
    let mut c = vec![0usize; n];
    visit(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best.unwrap()
}

/// Whether some set of `j` distinct vertices carries a `j`-cycle, checked by
/// trying every ordering; loops and parallel pairs for `j = 1, 2`.
pub fn brute_has_cycle(n: usize, edges: &[(usize, usize)], j: usize) -> bool {
    let count = |a: usize, b: usize| {
        let key = (a.min(b), a.max(b));
        edges.iter().filter(|&&e| e == key).count()
    };
    match j {
        0 => false,
        1 => edges.iter().any(|&(a, b)| a == b),
        2 => (0..n).any(|a| (a + 1..n).any(|b| count(a, b) >= 2)),
        _ => {
            if j > n {
                return false;
            }
            fn orderings(
                order: &mut Vec<usize>,
                used: &mut Vec<bool>,
                j: usize,
                n: usize,
                adj: &dyn Fn(usize, usize) -> bool,
            ) -> bool {
                if order.len() == j {
                    return adj(order[j - 1], order[0]);
                }
                for v in 0..n {
                    if used[v] {
                        continue;
                    }
                    if let Some(&last) = order.last() {
                        if !adj(last, v) {
                            continue;
                        }
                    }
                    used[v] = true;
                    order.push(v);
                    let found = orderings(order, used, j, n, adj);
                    order.pop();
                    used[v] = false;
                    if found {
                        return true;
                    }
                }
                false
            }
            let adj = |a: usize, b: usize| a != b && count(a, b) > 0;
            orderings(&mut Vec::new(), &mut vec![false; n], j, n, &adj)
        }
    }
}

pub fn edges_of(g: &cubic_meta::CubicGraph) -> Edges {
    (0..g.edges().len()).map(|i| g.edge(i)).collect()
}

/// Deterministic Fisher-Yates permutation from a small LCG, so oracles do not
/// depend on the crate's RNG plumbing.
pub fn lcg_permutation(n: usize, seed: &mut u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        *seed = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let j = ((*seed >> 33) as usize) % (i + 1);
        p.swap(i, j);
    }
    p
}

/// Random simple graph on `n` vertices, each pair present with probability
/// `p`, from the small LCG.
pub fn random_simple_graph(n: usize, p: f64, seed: &mut u64) -> cubic_meta::SimpleGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            *seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            if ((*seed >> 11) as f64 / (1u64 << 53) as f64) < p {
                edges.push((u, v));
            }
        }
    }
    cubic_meta::SimpleGraph::from_edges(n, edges).unwrap()
}

/// Random connected simple graph: a random spanning path plus extra edges.
pub fn random_connected_graph(n: usize, p: f64, seed: &mut u64) -> cubic_meta::SimpleGraph {
    let order = lcg_permutation(n, seed);
    let extra = random_simple_graph(n, p, seed);
    let mut edges: Vec<(usize, usize)> = order
        .windows(2)
        .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
        .collect();
    edges.extend(extra.edges().iter().map(|&(u, v)| (u as usize, v as usize)));
    edges.sort_unstable();
    edges.dedup();
    cubic_meta::SimpleGraph::from_edges(n, edges).unwrap()
}
