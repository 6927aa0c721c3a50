//! Connected cubic multigraphs.
//!
//! A [`CubicGraph`] is a connected multigraph on `0..n` in which every vertex
//! has degree three, a loop contributing two. Edges are kept as a sorted
//! multiset of normalized pairs `(u, v)` with `u <= v`, so two values compare
//! equal exactly when they are equal as labelled multigraphs.

mod canon;
mod enumerate;
mod structure;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use canon::{CanonicalCode, LabelledCode};
pub use enumerate::{enumerate_labelled, enumerate_unlabelled, EnumCaps, EnumError};
pub use structure::{LocalStructure, SpecialEdges};

/// Largest order representable with byte-sized vertex labels.
pub const MAX_ORDER: usize = 254;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("order {0} is not a positive even integer of at most {MAX_ORDER}")]
    Order(usize),
    #[error("edge {index} ({u}-{v}) references a vertex outside 0..{n}")]
    VertexRange {
        index: usize,
        u: usize,
        v: usize,
        n: usize,
    },
    #[error("degree: vertex {vertex} has degree {degree}, expected 3")]
    Degree { vertex: usize, degree: usize },
    #[error("edge count: found {found}, expected {expected}")]
    EdgeCount { found: usize, expected: usize },
    #[error("connectivity: vertex {vertex} is not reachable from vertex 0")]
    Disconnected { vertex: usize },
}

/// Checks every cubic-graph invariant on a raw edge list.
///
/// Failures are reported in a fixed order (order, vertex range, degree, edge
/// count, connectivity) and name the first witness found.
pub fn validate(n: usize, edges: &[(usize, usize)]) -> Result<(), Violation> {
    if n == 0 || n % 2 == 1 || n > MAX_ORDER {
        return Err(Violation::Order(n));
    }
    let mut degree = vec![0usize; n];
    for (index, &(u, v)) in edges.iter().enumerate() {
        if u >= n || v >= n {
            return Err(Violation::VertexRange { index, u, v, n });
        }
        degree[u] += 1;
        degree[v] += 1;
    }
    if let Some((vertex, &d)) = degree.iter().enumerate().find(|(_, &d)| d != 3) {
        return Err(Violation::Degree { vertex, degree: d });
    }
    if edges.len() != 3 * n / 2 {
        return Err(Violation::EdgeCount {
            found: edges.len(),
            expected: 3 * n / 2,
        });
    }
    let pairs: Vec<(u8, u8)> = edges.iter().map(|&(u, v)| (u as u8, v as u8)).collect();
    if let Some(vertex) = first_unreachable(n, &pairs) {
        return Err(Violation::Disconnected { vertex });
    }
    Ok(())
}

/// Smallest vertex not reachable from vertex 0, if any.
pub(crate) fn first_unreachable(n: usize, edges: &[(u8, u8)]) -> Option<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v) in edges {
        let a = find(&mut parent, u as usize);
        let b = find(&mut parent, v as usize);
        if a != b {
            parent[a] = b;
        }
    }
    let root = find(&mut parent, 0);
    (1..n).find(|&v| find(&mut parent, v) != root)
}

/// Index of one end of an edge: `end == 0` is the smaller endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub edge: usize,
    pub end: u8,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubicGraph {
    n: usize,
    edges: Vec<(u8, u8)>,
}

impl CubicGraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, Violation>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let raw: Vec<(usize, usize)> = edges.into_iter().collect();
        validate(n, &raw)?;
        let mut edges: Vec<(u8, u8)> = raw
            .into_iter()
            .map(|(u, v)| {
                if u <= v {
                    (u as u8, v as u8)
                } else {
                    (v as u8, u as u8)
                }
            })
            .collect();
        edges.sort_unstable();
        Ok(Self { n, edges })
    }

    /// Caller guarantees the cubic invariants; edges are normalized and sorted here.
    pub(crate) fn from_edges_unchecked(n: usize, mut edges: Vec<(u8, u8)>) -> Self {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        Self { n, edges }
    }

    /// The two-vertex graph with a triple edge.
    pub fn theta() -> Self {
        Self::new(2, [(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    /// Two loops joined by an edge.
    pub fn dumbbell() -> Self {
        Self::new(2, [(0, 0), (0, 1), (1, 1)]).unwrap()
    }

    pub fn k4() -> Self {
        Self::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::new(10, edges).unwrap()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u8, u8)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> (usize, usize) {
        let (u, v) = self.edges[index];
        (u as usize, v as usize)
    }

    pub fn is_loop(&self, index: usize) -> bool {
        let (u, v) = self.edges[index];
        u == v
    }

    /// Vertex that a half-edge is attached to.
    pub fn endpoint(&self, h: HalfEdge) -> usize {
        let (u, v) = self.edges[h.edge];
        if h.end == 0 {
            u as usize
        } else {
            v as usize
        }
    }

    /// The three half-edges at `v`, in edge order (a loop contributes both ends).
    pub fn half_edges(&self, v: usize) -> [HalfEdge; 3] {
        let mut out = [HalfEdge { edge: 0, end: 0 }; 3];
        let mut k = 0;
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if a as usize == v {
                out[k] = HalfEdge { edge: i, end: 0 };
                k += 1;
            }
            if b as usize == v {
                out[k] = HalfEdge { edge: i, end: 1 };
                k += 1;
            }
            if k == 3 {
                break;
            }
        }
        debug_assert_eq!(k, 3);
        out
    }

    /// Applies `perm` (old label to new label) to every vertex.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (perm[u as usize] as u8, perm[v as usize] as u8))
            .collect();
        Self::from_edges_unchecked(self.n, edges)
    }

    pub fn labelled_code(&self) -> LabelledCode {
        LabelledCode::from_graph(self)
    }

    pub fn canonical_form(&self) -> CanonicalCode {
        canon::canonical_form(self)
    }

    pub(crate) fn from_code_bytes(bytes: &[u8]) -> Result<Self, Violation> {
        let n = *bytes.first().ok_or(Violation::Order(0))? as usize;
        let edges = bytes[1..]
            .chunks(2)
            .map(|c| (c[0] as usize, *c.get(1).unwrap_or(&u8::MAX) as usize));
        Self::new(n, edges)
    }
}

impl fmt::Debug for CubicGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CubicGraph({self})")
    }
}

/// Interchange format `n;u1-v1,u2-v2,...` with the edge list sorted ascending.
impl fmt::Display for CubicGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.n)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{u}-{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing ';' after the order")]
    MissingSeparator,
    #[error("malformed number {0:?}")]
    Number(String),
    #[error("malformed edge {0:?}, expected u-v")]
    Edge(String),
    #[error("edges are not sorted ascending at position {0}")]
    Unsorted(usize),
    #[error(transparent)]
    Invalid(#[from] Violation),
}

impl FromStr for CubicGraph {
    type Err = ParseError;

    /// Accepts exactly the canonical text form: normalized pairs, sorted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (order, rest) = s
            .trim()
            .split_once(';')
            .ok_or(ParseError::MissingSeparator)?;
        let num = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| ParseError::Number(t.to_string()))
        };
        let n = num(order)?;
        let mut edges = Vec::new();
        if !rest.is_empty() {
            for item in rest.split(',') {
                let (u, v) = item
                    .split_once('-')
                    .ok_or_else(|| ParseError::Edge(item.to_string()))?;
                let (u, v) = (num(u)?, num(v)?);
                if u > v {
                    return Err(ParseError::Edge(item.to_string()));
                }
                edges.push((u, v));
            }
        }
        if let Some(i) = edges.windows(2).position(|w| w[0] > w[1]) {
            return Err(ParseError::Unsorted(i + 1));
        }
        Ok(Self::new(n, edges)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        assert_eq!(validate(2, &[(0, 1), (0, 1), (0, 1)]), Ok(()));
        assert_eq!(validate(2, &[(0, 0), (0, 1), (1, 1)]), Ok(()));
        assert_eq!(
            validate(2, &[(0, 1), (0, 1)]),
            Err(Violation::Degree {
                vertex: 0,
                degree: 2
            })
        );
    }

    #[test]
    fn validate_other_failures() {
        assert_eq!(validate(0, &[]), Err(Violation::Order(0)));
        assert_eq!(validate(3, &[]), Err(Violation::Order(3)));
        assert!(matches!(
            validate(2, &[(0, 2)]),
            Err(Violation::VertexRange { index: 0, .. })
        ));
        // two disjoint thetas
        let two = [(0, 1), (0, 1), (0, 1), (2, 3), (2, 3), (2, 3)];
        assert_eq!(
            validate(4, &two),
            Err(Violation::Disconnected { vertex: 2 })
        );
    }

    #[test]
    fn text_round_trip() {
        let g = CubicGraph::petersen();
        let text = g.to_string();
        assert_eq!(text.parse::<CubicGraph>().unwrap(), g);
        assert_eq!(CubicGraph::dumbbell().to_string(), "2;0-0,0-1,1-1");
        assert_eq!(CubicGraph::theta().to_string(), "2;0-1,0-1,0-1");
    }

    #[test]
    fn text_rejects_non_canonical_forms() {
        assert_eq!(
            "2;1-1,0-1,0-0".parse::<CubicGraph>(),
            Err(ParseError::Unsorted(1))
        );
        assert!(matches!(
            "2;1-0,0-1,0-1".parse::<CubicGraph>(),
            Err(ParseError::Edge(_))
        ));
        assert!(matches!(
            "2;0-1,0-1".parse::<CubicGraph>(),
            Err(ParseError::Invalid(Violation::Degree { vertex: 0, .. }))
        ));
        assert_eq!(
            "2:0-1".parse::<CubicGraph>(),
            Err(ParseError::MissingSeparator)
        );
    }

    #[test]
    fn half_edges_cover_loops_twice() {
        let g = CubicGraph::dumbbell();
        let h = g.half_edges(0);
        assert_eq!(h[0], HalfEdge { edge: 0, end: 0 });
        assert_eq!(h[1], HalfEdge { edge: 0, end: 1 });
        assert_eq!(h[2], HalfEdge { edge: 1, end: 0 });
        assert!(h.iter().all(|&x| g.endpoint(x) == 0));
    }
}
