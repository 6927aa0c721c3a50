//! Exhaustive generation of cubic multigraphs of a given order.
//!
//! Edge multisets are produced in lexicographic order: the smallest vertex
//! with free degree always takes its next edge, and the partners of one vertex
//! are chosen in non-decreasing order, so every labelled multigraph appears
//! exactly once. Restricting new partners to the next unused label yields only
//! breadth-first labellings, which still reach every isomorphism class of
//! connected graphs and is what the unlabelled enumeration canonicalizes.

use std::collections::HashSet;

use thiserror::Error;

use super::{first_unreachable, CanonicalCode, CubicGraph, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("order {0} must be an even integer >= 2")]
    Order(usize),
    #[error("order {n} exceeds the configured cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

/// Size caps for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumCaps {
    pub labelled: usize,
    pub unlabelled: usize,
}

impl Default for EnumCaps {
    fn default() -> Self {
        Self {
            labelled: 8,
            unlabelled: 10,
        }
    }
}

impl EnumCaps {
    /// Both caps raised to `cap`.
    pub fn override_with(cap: usize) -> Self {
        Self {
            labelled: cap,
            unlabelled: cap,
        }
    }
}

fn check_order(n: usize, cap: usize) -> Result<(), EnumError> {
    if n < 2 || n % 2 == 1 || n > MAX_ORDER {
        return Err(EnumError::Order(n));
    }
    if n > cap {
        return Err(EnumError::CapExceeded { n, cap });
    }
    Ok(())
}

struct Generator<F> {
    n: usize,
    breadth_first: bool,
    free: Vec<u8>,
    edges: Vec<(u8, u8)>,
    emit: F,
}

impl<F: FnMut(&[(u8, u8)])> Generator<F> {
    fn run(&mut self) {
        self.step(0, 0);
    }

    /// `max_seen` is the largest vertex touched so far (vertex 0 counts).
    fn step(&mut self, from: usize, max_seen: usize) {
        let Some(v) = (from..self.n).find(|&v| self.free[v] > 0) else {
            (self.emit)(&self.edges);
            return;
        };
        if self.breadth_first && v > max_seen {
            // Every vertex up to max_seen is saturated: a closed component.
            return;
        }
        let lo = match self.edges.last() {
            Some(&(a, b)) if a as usize == v => b as usize,
            _ => v,
        };
        let hi = if self.breadth_first {
            (max_seen + 1).min(self.n - 1)
        } else {
            self.n - 1
        };
        for w in lo..=hi {
            let need = if w == v { 2 } else { 1 };
            if self.free[w] < need || (w != v && self.free[v] < 1) {
                continue;
            }
            self.free[v] -= 1;
            self.free[w] -= 1;
            self.edges.push((v as u8, w as u8));
            self.step(v, max_seen.max(w));
            self.edges.pop();
            self.free[v] += 1;
            self.free[w] += 1;
        }
    }
}

fn generate(n: usize, breadth_first: bool, emit: impl FnMut(&[(u8, u8)])) {
    let mut gen = Generator {
        n,
        breadth_first,
        free: vec![3; n],
        edges: Vec::with_capacity(3 * n / 2),
        emit,
    };
    gen.run();
}

/// All connected labelled cubic multigraphs on `0..n`, sorted by labelled code.
pub fn enumerate_labelled(n: usize, caps: &EnumCaps) -> Result<Vec<CubicGraph>, EnumError> {
    check_order(n, caps.labelled)?;
    let mut out = Vec::new();
    generate(n, false, |edges| {
        if first_unreachable(n, edges).is_none() {
            out.push(CubicGraph {
                n,
                edges: edges.to_vec(),
            });
        }
    });
    debug_assert!(out
        .windows(2)
        .all(|w| w[0].labelled_code() < w[1].labelled_code()));
    Ok(out)
}

/// One canonically labelled representative per isomorphism class, sorted by
/// canonical code.
pub fn enumerate_unlabelled(n: usize, caps: &EnumCaps) -> Result<Vec<CubicGraph>, EnumError> {
    check_order(n, caps.unlabelled)?;
    let mut classes: HashSet<CanonicalCode> = HashSet::new();
    generate(n, true, |edges| {
        let g = CubicGraph {
            n,
            edges: edges.to_vec(),
        };
        debug_assert!(first_unreachable(n, edges).is_none());
        classes.insert(g.canonical_form());
    });
    let mut codes: Vec<CanonicalCode> = classes.into_iter().collect();
    codes.sort_unstable();
    Ok(codes.iter().map(CanonicalCode::decode).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two() {
        let caps = EnumCaps::default();
        let l = enumerate_labelled(2, &caps).unwrap();
        assert_eq!(l, vec![CubicGraph::dumbbell(), CubicGraph::theta()]);
        let u = enumerate_unlabelled(2, &caps).unwrap();
        assert_eq!(u.len(), 2);
    }

    #[test]
    fn preconditions() {
        let caps = EnumCaps::default();
        assert_eq!(enumerate_labelled(0, &caps), Err(EnumError::Order(0)));
        assert_eq!(enumerate_labelled(5, &caps), Err(EnumError::Order(5)));
        assert_eq!(
            enumerate_labelled(10, &caps),
            Err(EnumError::CapExceeded { n: 10, cap: 8 })
        );
        assert_eq!(
            enumerate_unlabelled(12, &caps),
            Err(EnumError::CapExceeded { n: 12, cap: 10 })
        );
    }

    #[test]
    fn every_output_validates() {
        let caps = EnumCaps::default();
        for g in enumerate_labelled(4, &caps).unwrap() {
            let raw: Vec<(usize, usize)> = (0..g.edges.len()).map(|i| g.edge(i)).collect();
            assert_eq!(super::super::validate(4, &raw), Ok(()));
        }
    }

    #[test]
    fn unlabelled_representatives_are_canonical() {
        for g in enumerate_unlabelled(6, &EnumCaps::default()).unwrap() {
            assert_eq!(g.canonical_form().decode(), g);
        }
    }
}
