//! Byte codes for labelled and unlabelled cubic graphs.
//!
//! Both codes share one layout: the order followed by the sorted normalized
//! edge pairs, one byte per endpoint. A labelled code keeps the vertex labels;
//! a canonical code first relabels the graph by a canonical labelling.
//!
//! The canonical labelling is the minimum code over the leaves of an
//! individualization-refinement search tree. Colour refinement uses loop
//! counts and edge multiplicities, and the first non-singleton cell is
//! always the one individualized, so the set of leaf codes depends only on
//! the isomorphism class and its minimum is an invariant.

use super::{CubicGraph, Violation};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelledCode(Vec<u8>);

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

fn encode(n: usize, edges: &[(u8, u8)]) -> Vec<u8> {
    let mut out = Vec::with_capacity(1 + 2 * edges.len());
    out.push(n as u8);
    for &(u, v) in edges {
        out.push(u);
        out.push(v);
    }
    out
}

macro_rules! code_common {
    ($ty:ident) => {
        impl $ty {
            pub fn as_bytes(&self) -> &[u8] {
                &self.0
            }

            pub fn order(&self) -> usize {
                self.0[0] as usize
            }

            pub fn decode(&self) -> CubicGraph {
                CubicGraph::from_code_bytes(&self.0).expect("codes hold valid graphs")
            }

            /// Rebuilds a code from raw bytes, validating the graph it names.
            pub fn from_bytes(bytes: Vec<u8>) -> Result<Self, Violation> {
                CubicGraph::from_code_bytes(&bytes)?;
                Ok(Self(bytes))
            }
        }

        impl std::fmt::Debug for $ty {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                write!(f, "{}({})", stringify!($ty), self.decode())
            }
        }
    };
}

code_common!(LabelledCode);
code_common!(CanonicalCode);

impl LabelledCode {
    pub fn from_graph(g: &CubicGraph) -> Self {
        Self(encode(g.n, &g.edges))
    }
}

struct Refiner {
    n: usize,
    loops: Vec<u8>,
    // (neighbor, multiplicity) for non-loop neighbors
    adj: Vec<Vec<(usize, u8)>>,
}

impl Refiner {
    fn new(g: &CubicGraph) -> Self {
        let n = g.n;
        let mut loops = vec![0u8; n];
        let mut adj: Vec<Vec<(usize, u8)>> = vec![Vec::new(); n];
        for &(u, v) in &g.edges {
            let (u, v) = (u as usize, v as usize);
            if u == v {
                loops[u] += 1;
                continue;
            }
            for (a, b) in [(u, v), (v, u)] {
                match adj[a].iter_mut().find(|(w, _)| *w == b) {
                    Some(entry) => entry.1 += 1,
                    None => adj[a].push((b, 1)),
                }
            }
        }
        Self { n, loops, adj }
    }

    /// Refines `colors` to the coarsest equitable partition below it.
    /// Colours are dense ranks `0..k` and the order of old colours is kept.
    fn refine(&self, colors: &mut [u32]) {
        let mut cells = count_cells(colors);
        let mut sigs: Vec<(Vec<u32>, usize)> = Vec::with_capacity(self.n);
        loop {
            sigs.clear();
            for v in 0..self.n {
                let mut nb: Vec<u32> = self.adj[v]
                    .iter()
                    .map(|&(w, m)| colors[w] * 4 + m as u32)
                    .collect();
                nb.sort_unstable();
                let mut sig = Vec::with_capacity(nb.len() + 2);
                sig.push(colors[v]);
                sig.push(self.loops[v] as u32);
                sig.extend(nb);
                sigs.push((sig, v));
            }
            sigs.sort_unstable();
            let mut rank = 0u32;
            for i in 0..sigs.len() {
                if i > 0 && sigs[i].0 != sigs[i - 1].0 {
                    rank += 1;
                }
                colors[sigs[i].1] = rank;
            }
            let next = rank as usize + 1;
            if next == cells {
                return;
            }
            cells = next;
        }
    }
}

fn count_cells(colors: &[u32]) -> usize {
    let mut seen: Vec<u32> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

struct Search<'a> {
    graph: &'a CubicGraph,
    refiner: Refiner,
    best: Option<Vec<(u8, u8)>>,
    scratch: Vec<(u8, u8)>,
}

impl Search<'_> {
    fn visit(&mut self, mut colors: Vec<u32>) {
        self.refiner.refine(&mut colors);
        let n = self.refiner.n;
        let mut sizes = vec![0usize; n];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        match sizes.iter().position(|&s| s > 1) {
            None => self.leaf(&colors),
            Some(target) => {
                let target = target as u32;
                let members: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
                for &v in &members {
                    let split: Vec<u32> = colors
                        .iter()
                        .enumerate()
                        .map(|(u, &c)| 2 * c + u32::from(c == target && u != v))
                        .collect();
                    self.visit(split);
                }
            }
        }
    }

    fn leaf(&mut self, perm: &[u32]) {
        self.scratch.clear();
        self.scratch.extend(self.graph.edges.iter().map(|&(u, v)| {
            let (a, b) = (perm[u as usize] as u8, perm[v as usize] as u8);
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        }));
        self.scratch.sort_unstable();
        if self.best.as_ref().is_none_or(|b| self.scratch < *b) {
            self.best = Some(self.scratch.clone());
        }
    }
}

pub(crate) fn canonical_form(g: &CubicGraph) -> CanonicalCode {
    let mut search = Search {
        graph: g,
        refiner: Refiner::new(g),
        best: None,
        scratch: Vec::with_capacity(g.edges.len()),
    };
    search.visit(vec![0; g.n]);
    let best = search.best.expect("search tree has at least one leaf");
    CanonicalCode(encode(g.n, &best))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dumbbell_swap_is_invisible() {
        let d = CubicGraph::dumbbell();
        let swapped = d.relabel(&[1, 0]);
        assert_eq!(d.canonical_form(), swapped.canonical_form());
    }

    #[test]
    fn theta_and_dumbbell_differ() {
        assert_ne!(
            CubicGraph::theta().canonical_form(),
            CubicGraph::dumbbell().canonical_form()
        );
    }

    #[test]
    fn decode_returns_isomorphic_graph() {
        for g in [
            CubicGraph::k4(),
            CubicGraph::petersen(),
            CubicGraph::dumbbell(),
        ] {
            let code = g.canonical_form();
            let back = code.decode();
            assert_eq!(back.order(), g.order());
            assert_eq!(back.canonical_form(), code);
        }
    }

    #[test]
    fn petersen_relabelings_agree() {
        let p = CubicGraph::petersen();
        let code = p.canonical_form();
        let perm = [3, 7, 1, 9, 0, 5, 2, 8, 6, 4];
        assert_eq!(p.relabel(&perm).canonical_form(), code);
    }

    #[test]
    fn code_bytes_are_validated() {
        assert!(LabelledCode::from_bytes(vec![2, 0, 1, 0, 1]).is_err());
        let ok = LabelledCode::from_bytes(vec![2, 0, 1, 0, 1, 0, 1]).unwrap();
        assert_eq!(ok.decode(), CubicGraph::theta());
    }
}
