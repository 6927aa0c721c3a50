//! Fixtures shared by the benchmarks.

use cubic_meta::cubic::{enumerate_labelled, EnumCaps};
use cubic_meta::{CubicGraph, MetaGraph, Mode, SimpleGraph};

/// Labelled cubic graphs of order `n` scrambled by a fixed relabelling, so
/// canonicalization has real work to do.
pub fn scrambled(n: usize) -> Vec<CubicGraph> {
    let perm: Vec<usize> = (0..n).map(|i| (i * 5 + 3) % n).collect();
    let perm = if is_permutation(&perm) {
        perm
    } else {
        (0..n).rev().collect()
    };
    enumerate_labelled(n, &EnumCaps::default())
        .expect("within caps")
        .iter()
        .map(|g| g.relabel(&perm))
        .collect()
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
}

pub fn meta(n: usize, mode: Mode) -> MetaGraph {
    MetaGraph::build(n, mode, &EnumCaps::default()).expect("within caps")
}

/// `count` cliques of size `size` joined in a ring by single edges.
pub fn ring_of_cliques(count: usize, size: usize) -> SimpleGraph {
    let mut edges = Vec::new();
    for c in 0..count {
        let base = c * size;
        for i in 0..size {
            for j in i + 1..size {
                edges.push((base + i, base + j));
            }
        }
        edges.push((base, ((c + 1) % count) * size + 1));
    }
    SimpleGraph::from_edges(count * size, edges).expect("simple")
}
