//! Local structure queries: loops, parallel edges, short cycles, bridges.
//!
//! Cycles have distinct vertices and distinct edges. In a multigraph this
//! makes a 1-cycle a loop and a 2-cycle a pair of parallel edges; cycles of
//! length at least three only depend on the underlying simple graph.

use super::CubicGraph;

/// A loop, multi-edge, triangle, or 4-cycle that disqualifies nearby edges
/// from carrying four distinct labelled moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalStructure {
    Loop { edge: usize },
    MultiEdge { edges: [usize; 2] },
    Triangle { vertices: [usize; 3] },
    Square { vertices: [usize; 4] },
}

impl LocalStructure {
    pub fn vertices(&self, g: &CubicGraph) -> Vec<usize> {
        match self {
            LocalStructure::Loop { edge } => vec![g.edge(*edge).0],
            LocalStructure::MultiEdge { edges } => {
                let (u, v) = g.edge(edges[0]);
                vec![u, v]
            }
            LocalStructure::Triangle { vertices } => vertices.to_vec(),
            LocalStructure::Square { vertices } => vertices.to_vec(),
        }
    }

    /// Re-checks that the structure is present in `g`.
    pub fn is_present_in(&self, g: &CubicGraph) -> bool {
        let adjacent = |a: usize, b: usize| g.multiplicity(a, b) > 0;
        match *self {
            LocalStructure::Loop { edge } => edge < g.edges.len() && g.is_loop(edge),
            LocalStructure::MultiEdge { edges: [a, b] } => {
                a != b
                    && a < g.edges.len()
                    && b < g.edges.len()
                    && g.edges[a] == g.edges[b]
                    && !g.is_loop(a)
            }
            LocalStructure::Triangle {
                vertices: [a, b, c],
            } => a != b && b != c && a != c && adjacent(a, b) && adjacent(b, c) && adjacent(c, a),
            LocalStructure::Square {
                vertices: [a, b, c, d],
            } => {
                let vs = [a, b, c, d];
                let distinct = (0..4).all(|i| (i + 1..4).all(|j| vs[i] != vs[j]));
                distinct && adjacent(a, b) && adjacent(b, c) && adjacent(c, d) && adjacent(d, a)
            }
        }
    }
}

/// Partition of the edge indices into `E'` and the rest, each excluded edge
/// carrying a structure it touches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialEdges {
    pub special: Vec<usize>,
    pub excluded: Vec<(usize, LocalStructure)>,
}

impl CubicGraph {
    /// Number of edges between `u` and `v` (loops at `u` when `u == v`).
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let key = if u <= v {
            (u as u8, v as u8)
        } else {
            (v as u8, u as u8)
        };
        self.edges.iter().filter(|&&e| e == key).count()
    }

    /// Distinct neighbors of `v` other than `v` itself, ascending.
    pub fn simple_neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                let (a, b) = (a as usize, b as usize);
                if a == b {
                    None
                } else if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.dedup();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    /// Number of distinct vertex pairs joined by two or more edges.
    pub fn multi_edge_count(&self) -> usize {
        let mut count = 0;
        let mut i = 0;
        while i < self.edges.len() {
            let mut j = i + 1;
            while j < self.edges.len() && self.edges[j] == self.edges[i] {
                j += 1;
            }
            if j - i >= 2 && self.edges[i].0 != self.edges[i].1 {
                count += 1;
            }
            i = j;
        }
        count
    }

    /// Bitmask with bit `j` set iff the graph has a `j`-cycle, for
    /// `1 <= j <= min(limit, 63)`.
    pub fn cycle_lengths_up_to(&self, limit: usize) -> u64 {
        let limit = limit.min(63).min(self.n);
        let mut mask = 0u64;
        if limit >= 1 && self.loop_count() > 0 {
            mask |= 1 << 1;
        }
        if limit >= 2 && self.multi_edge_count() > 0 {
            mask |= 1 << 2;
        }
        if limit < 3 {
            return mask;
        }
        let adj: Vec<Vec<usize>> = (0..self.n).map(|v| self.simple_neighbors(v)).collect();
        let mut on_path = vec![false; self.n];
        // Each cycle is found from its smallest vertex, walking through larger ones.
        fn walk(
            adj: &[Vec<usize>],
            start: usize,
            v: usize,
            len: usize,
            limit: usize,
            on_path: &mut [bool],
            mask: &mut u64,
        ) {
            for &w in &adj[v] {
                if w == start && len >= 3 {
                    *mask |= 1 << len;
                } else if w > start && !on_path[w] && len < limit {
                    on_path[w] = true;
                    walk(adj, start, w, len + 1, limit, on_path, mask);
                    on_path[w] = false;
                }
            }
        }
        for start in 0..self.n {
            on_path[start] = true;
            walk(&adj, start, start, 1, limit, &mut on_path, &mut mask);
            on_path[start] = false;
        }
        mask
    }

    pub fn cycle_lengths(&self) -> u64 {
        self.cycle_lengths_up_to(self.n)
    }

    pub fn has_j_cycle(&self, j: usize) -> bool {
        j >= 1 && j <= self.n && j <= 63 && self.cycle_lengths_up_to(j) & (1 << j) != 0
    }

    /// Length of the shortest cycle. Every finite cubic graph has one.
    pub fn girth(&self) -> usize {
        let mask = self.cycle_lengths();
        mask.trailing_zeros() as usize
    }

    /// Indices of edges whose removal disconnects the graph.
    pub fn bridges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| !self.is_loop(i))
            .filter(|&i| {
                let rest: Vec<(u8, u8)> = self
                    .edges
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &e)| e)
                    .collect();
                super::first_unreachable(self.n, &rest).is_some()
            })
            .collect()
    }

    /// Edges neither contained in nor incident to a loop, multi-edge, triangle
    /// or 4-cycle.
    pub fn special_edges(&self) -> SpecialEdges {
        let mut witness: Vec<Option<LocalStructure>> = vec![None; self.n];
        let mark = |s: LocalStructure, witness: &mut Vec<Option<LocalStructure>>| {
            for v in s.vertices(self) {
                if witness[v].is_none() {
                    witness[v] = Some(s.clone());
                }
            }
        };
        for i in 0..self.edges.len() {
            if self.is_loop(i) {
                mark(LocalStructure::Loop { edge: i }, &mut witness);
            } else if i + 1 < self.edges.len() && self.edges[i + 1] == self.edges[i] {
                mark(
                    LocalStructure::MultiEdge { edges: [i, i + 1] },
                    &mut witness,
                );
            }
        }
        let adj: Vec<Vec<usize>> = (0..self.n).map(|v| self.simple_neighbors(v)).collect();
        for a in 0..self.n {
            for &b in &adj[a] {
                for &c in &adj[b] {
                    if c == a {
                        continue;
                    }
                    if adj[c].contains(&a) {
                        mark(
                            LocalStructure::Triangle {
                                vertices: [a, b, c],
                            },
                            &mut witness,
                        );
                    }
                    for &d in &adj[c] {
                        if d != a && d != b && adj[d].contains(&a) {
                            mark(
                                LocalStructure::Square {
                                    vertices: [a, b, c, d],
                                },
                                &mut witness,
                            );
                        }
                    }
                }
            }
        }
        let mut special = Vec::new();
        let mut excluded = Vec::new();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            match witness[u as usize]
                .as_ref()
                .or(witness[v as usize].as_ref())
            {
                Some(s) => excluded.push((i, s.clone())),
                None => special.push(i),
            }
        }
        SpecialEdges { special, excluded }
    }
}
