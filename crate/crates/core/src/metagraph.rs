//! The graph of graphs: cubic multigraphs of one order joined by Whitehead moves.
//!
//! Vertices are indexed by ascending code (labelled or canonical), so every
//! construction route yields the same indexing. Adjacency is a sorted list of
//! pairs `(i, j)` with `i < j`, backed by a [`SimpleGraph`].

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cubic::{enumerate_labelled, enumerate_unlabelled, CubicGraph, EnumCaps, EnumError};
use crate::graph::SimpleGraph;
use crate::whitehead::{labelled_neighbors_tally, unlabelled_neighbors_tally, MoveTally};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Labelled,
    Unlabelled,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Labelled => "labelled",
            Mode::Unlabelled => "unlabelled",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "labelled" | "l" => Ok(Mode::Labelled),
            "unlabelled" | "u" => Ok(Mode::Unlabelled),
            other => Err(format!(
                "unknown mode {other:?}, expected labelled|unlabelled"
            )),
        }
    }
}

#[derive(Debug, Error)]
pub enum MetaError {
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error("seed has order {0}, outside the enumeration caps")]
    SeedOrder(usize),
    #[error("neighbor {0} of a member is missing from the vertex set")]
    UnknownNeighbor(String),
    #[error("i/o failure: {0}")]
    Io(#[from] io::Error),
    #[error("format corruption: {0}")]
    Format(String),
}

/// Counts gathered while generating meta-edges.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct BuildDiagnostics {
    pub moves: usize,
    /// Moves whose result is the source graph (or its class).
    pub self_moves: usize,
    pub disconnecting_moves: usize,
    /// Moves whose target was already reached from the same source; these
    /// are the multiplicities that a simple meta-graph discards.
    pub repeated_moves: usize,
    /// Meta-edges seen from one endpoint only.
    pub asymmetric_pairs: usize,
}

impl BuildDiagnostics {
    fn absorb(&mut self, t: &MoveTally) {
        self.moves += t.moves;
        self.self_moves += t.self_moves;
        self.disconnecting_moves += t.disconnecting;
        self.repeated_moves += t.repeated;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetaGraph {
    mode: Mode,
    n: usize,
    members: Vec<CubicGraph>,
    graph: SimpleGraph,
}

fn code_of(g: &CubicGraph, mode: Mode) -> Vec<u8> {
    match mode {
        Mode::Labelled => g.labelled_code().as_bytes().to_vec(),
        Mode::Unlabelled => g.canonical_form().as_bytes().to_vec(),
    }
}

fn neighbor_codes(g: &CubicGraph, mode: Mode) -> (Vec<Vec<u8>>, MoveTally) {
    match mode {
        Mode::Labelled => {
            let (set, t) = labelled_neighbors_tally(g);
            (set.into_iter().map(|c| c.as_bytes().to_vec()).collect(), t)
        }
        Mode::Unlabelled => {
            let (set, t) = unlabelled_neighbors_tally(g);
            (set.into_iter().map(|c| c.as_bytes().to_vec()).collect(), t)
        }
    }
}

fn cap_for(mode: Mode, caps: &EnumCaps) -> usize {
    match mode {
        Mode::Labelled => caps.labelled,
        Mode::Unlabelled => caps.unlabelled,
    }
}

/// Joins `members` (sorted by code) along Whitehead moves.
fn connect(
    mode: Mode,
    n: usize,
    members: Vec<CubicGraph>,
) -> Result<(MetaGraph, BuildDiagnostics), MetaError> {
    let index: HashMap<Vec<u8>, u32> = members
        .iter()
        .enumerate()
        .map(|(i, g)| (code_of(g, mode), i as u32))
        .collect();
    let per_vertex: Vec<Result<(Vec<(u32, u32)>, MoveTally), MetaError>> = members
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let (codes, tally) = neighbor_codes(g, mode);
            let mut pairs = Vec::with_capacity(codes.len());
            for c in codes {
                let j = *index.get(&c).ok_or_else(|| {
                    MetaError::UnknownNeighbor(
                        CubicGraph::from_code_bytes(&c)
                            .map_or_else(|e| e.to_string(), |g| g.to_string()),
                    )
                })?;
                let i = i as u32;
                pairs.push(if i < j { (i, j) } else { (j, i) });
            }
            Ok((pairs, tally))
        })
        .collect();
    let mut diagnostics = BuildDiagnostics::default();
    let mut pairs = Vec::new();
    for r in per_vertex {
        let (p, t) = r?;
        diagnostics.absorb(&t);
        pairs.extend(p);
    }
    pairs.par_sort_unstable();
    let mut unique = Vec::with_capacity(pairs.len() / 2);
    let mut i = 0;
    while i < pairs.len() {
        let mut j = i + 1;
        while j < pairs.len() && pairs[j] == pairs[i] {
            j += 1;
        }
        if j - i != 2 {
            diagnostics.asymmetric_pairs += 1;
        }
        unique.push(pairs[i]);
        i = j;
    }
    let graph = SimpleGraph::from_sorted_pairs(members.len(), unique);
    Ok((
        MetaGraph {
            mode,
            n,
            members,
            graph,
        },
        diagnostics,
    ))
}

impl MetaGraph {
    /// The full meta-graph over every cubic graph of order `n`.
    pub fn build(n: usize, mode: Mode, caps: &EnumCaps) -> Result<Self, MetaError> {
        Self::build_with_diagnostics(n, mode, caps).map(|(g, _)| g)
    }

    pub fn build_with_diagnostics(
        n: usize,
        mode: Mode,
        caps: &EnumCaps,
    ) -> Result<(Self, BuildDiagnostics), MetaError> {
        let members = match mode {
            Mode::Labelled => enumerate_labelled(n, caps)?,
            Mode::Unlabelled => enumerate_unlabelled(n, caps)?,
        };
        connect(mode, n, members)
    }

    /// The connected component of `seed`, found by breadth-first closure over
    /// Whitehead neighbors. Frontiers are expanded in sorted code order.
    pub fn build_by_closure(
        seed: &CubicGraph,
        mode: Mode,
        caps: &EnumCaps,
    ) -> Result<Self, MetaError> {
        let n = seed.order();
        if n > cap_for(mode, caps) {
            return Err(EnumError::CapExceeded {
                n,
                cap: cap_for(mode, caps),
            }
            .into());
        }
        let start = code_of(seed, mode);
        let mut seen: HashSet<Vec<u8>> = HashSet::from([start.clone()]);
        let mut frontier = vec![start];
        while !frontier.is_empty() {
            let found: Vec<Vec<Vec<u8>>> = frontier
                .par_iter()
                .map(|c| {
                    let g = CubicGraph::from_code_bytes(c).expect("closure codes are valid");
                    neighbor_codes(&g, mode).0
                })
                .collect();
            let mut next: Vec<Vec<u8>> = found
                .into_iter()
                .flatten()
                .filter(|c| !seen.contains(c))
                .collect();
            next.sort_unstable();
            next.dedup();
            seen.extend(next.iter().cloned());
            frontier = next;
        }
        let mut codes: Vec<Vec<u8>> = seen.into_iter().collect();
        codes.sort_unstable();
        let members = codes
            .iter()
            .map(|c| CubicGraph::from_code_bytes(c).expect("closure codes are valid"))
            .collect();
        connect(mode, n, members).map(|(g, _)| g)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Order of the member cubic graphs.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[CubicGraph] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &CubicGraph {
        &self.members[i]
    }

    pub fn code(&self, i: usize) -> Vec<u8> {
        code_of(&self.members[i], self.mode)
    }

    /// Index of the vertex for `g` (labelled code or isomorphism class).
    pub fn index_of(&self, g: &CubicGraph) -> Option<usize> {
        let key = code_of(g, self.mode);
        self.members
            .binary_search_by(|m| code_of(m, self.mode).cmp(&key))
            .ok()
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        self.graph.edges()
    }

    pub fn degree_stats(&self) -> DegreeStats {
        DegreeStats::of(self)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), MetaError> {
        let file = fs::File::create(path)?;
        let mut w = BufWriter::new(file);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, MetaError> {
        let bytes = fs::read(path)?;
        Self::read_from(&bytes)
    }

    pub fn write_to<W: Write>(&self, w: &mut W) -> io::Result<()> {
        let mut hashing = HashingWriter {
            inner: w,
            hasher: Sha256::new(),
        };
        writeln!(hashing, "{FORMAT_MAGIC} {FORMAT_VERSION}")?;
        writeln!(hashing, "mode {}", self.mode)?;
        writeln!(hashing, "order {}", self.n)?;
        writeln!(hashing, "vertices {}", self.members.len())?;
        for g in &self.members {
            writeln!(hashing, "{g}")?;
        }
        writeln!(hashing, "edges {}", self.graph.edge_count())?;
        for &(i, j) in self.graph.edges() {
            writeln!(hashing, "{i} {j}")?;
        }
        let digest = hex::encode(hashing.hasher.finalize());
        writeln!(w, "sha256 {digest}")
    }

    pub fn read_from(bytes: &[u8]) -> Result<Self, MetaError> {
        let corrupt = |msg: String| MetaError::Format(msg);
        let text = std::str::from_utf8(bytes).map_err(|_| corrupt("not utf-8".into()))?;
        let header = text.lines().next().unwrap_or_default();
        match header.split_once(' ') {
            Some((FORMAT_MAGIC, version)) if version == FORMAT_VERSION.to_string() => {}
            Some((FORMAT_MAGIC, version)) => {
                return Err(corrupt(format!(
                    "unsupported format version {version}, expected {FORMAT_VERSION}"
                )))
            }
            _ => return Err(corrupt(format!("bad magic line {header:?}"))),
        }
        let body_end = text
            .trim_end_matches('\n')
            .rfind('\n')
            .map(|p| p + 1)
            .ok_or_else(|| corrupt("missing checksum line".into()))?;
        let (body, trailer) = text.split_at(body_end);
        let expected = trailer
            .trim_end()
            .strip_prefix("sha256 ")
            .ok_or_else(|| corrupt("missing checksum line (truncated file?)".into()))?;
        let actual = hex::encode(Sha256::digest(body.as_bytes()));
        if actual != expected {
            return Err(corrupt(format!(
                "checksum mismatch: recorded {expected}, computed {actual}"
            )));
        }

        let mut lines = body.lines().skip(1);
        let number = |s: String, what: &str| {
            s.parse::<usize>()
                .map_err(|_| MetaError::Format(format!("bad {what} {s:?}")))
        };
        let mode: Mode = field(&mut lines, "mode")?.parse().map_err(corrupt)?;
        let n = number(field(&mut lines, "order")?, "order")?;
        let count = number(field(&mut lines, "vertices")?, "vertex count")?;
        let mut members = Vec::with_capacity(count);
        for _ in 0..count {
            let line = lines
                .next()
                .ok_or_else(|| corrupt("vertex list ends early".into()))?;
            let g: CubicGraph = line
                .parse()
                .map_err(|e| corrupt(format!("vertex {line:?}: {e}")))?;
            if g.order() != n {
                return Err(corrupt(format!("vertex {line:?} has order {}", g.order())));
            }
            if mode == Mode::Unlabelled && g.canonical_form().decode() != g {
                return Err(corrupt(format!("vertex {line:?} is not canonical")));
            }
            members.push(g);
        }
        let sorted = members
            .windows(2)
            .all(|w| code_of(&w[0], mode) < code_of(&w[1], mode));
        if !sorted {
            return Err(corrupt("vertices are not strictly ascending".into()));
        }
        let edge_count = number(field(&mut lines, "edges")?, "edge count")?;
        let mut pairs = Vec::with_capacity(edge_count);
        for _ in 0..edge_count {
            let line = lines
                .next()
                .ok_or_else(|| corrupt("edge list ends early".into()))?;
            let (a, b) = line
                .split_once(' ')
                .ok_or_else(|| corrupt(format!("bad edge {line:?}")))?;
            let a: u32 = a
                .parse()
                .map_err(|_| corrupt(format!("bad edge {line:?}")))?;
            let b: u32 = b
                .parse()
                .map_err(|_| corrupt(format!("bad edge {line:?}")))?;
            if a >= b || b as usize >= count {
                return Err(corrupt(format!("edge {line:?} out of range or unordered")));
            }
            pairs.push((a, b));
        }
        if lines.next().is_some() {
            return Err(corrupt("trailing data before checksum".into()));
        }
        if !pairs.windows(2).all(|w| w[0] < w[1]) {
            return Err(corrupt("edges are not strictly ascending".into()));
        }
        Ok(MetaGraph {
            mode,
            n,
            members,
            graph: SimpleGraph::from_sorted_pairs(count, pairs),
        })
    }
}

fn field<'a>(lines: &mut impl Iterator<Item = &'a str>, name: &str) -> Result<String, MetaError> {
    let line = lines
        .next()
        .ok_or_else(|| MetaError::Format(format!("missing {name} line")))?;
    line.strip_prefix(name)
        .and_then(|r| r.strip_prefix(' '))
        .map(str::to_string)
        .ok_or_else(|| MetaError::Format(format!("expected {name}, found {line:?}")))
}

const FORMAT_MAGIC: &str = "cubic-meta-graph";
const FORMAT_VERSION: u32 = 1;

struct HashingWriter<'a, W: Write> {
    inner: &'a mut W,
    hasher: Sha256,
}

impl<W: Write> Write for HashingWriter<'_, W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let k = self.inner.write(buf)?;
        self.hasher.update(&buf[..k]);
        Ok(k)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

/// Exact degree statistics of a meta-graph, compared against the per-mode
/// move count: `6n` labelled (four moves on each of `3n/2` edges) and `3n`
/// unlabelled.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeStats {
    pub mode: Mode,
    pub order: usize,
    pub vertices: usize,
    pub min: usize,
    pub max: usize,
    pub mean: f64,
    /// Mean degree as an exact `p/q` string.
    pub mean_exact: String,
    pub histogram: BTreeMap<usize, usize>,
    pub reference: usize,
    pub mean_minus_reference: f64,
    pub max_minus_reference: i64,
}

impl DegreeStats {
    fn of(g: &MetaGraph) -> Self {
        let graph = g.graph();
        let mut histogram = BTreeMap::new();
        for v in 0..graph.vertex_count() {
            *histogram.entry(graph.degree(v)).or_insert(0) += 1;
        }
        let total = 2 * graph.edge_count();
        let verts = graph.vertex_count();
        let mean = total as f64 / verts as f64;
        let reference = match g.mode {
            Mode::Labelled => 6 * g.n,
            Mode::Unlabelled => 3 * g.n,
        };
        let max = histogram.keys().next_back().copied().unwrap_or(0);
        Self {
            mode: g.mode,
            order: g.n,
            vertices: verts,
            min: histogram.keys().next().copied().unwrap_or(0),
            max,
            mean,
            mean_exact: crate::exact::ratio_string(&crate::exact::Rational::new(
                total as i128,
                verts.max(1) as i128,
            )),
            histogram,
            reference,
            mean_minus_reference: mean - reference as f64,
            max_minus_reference: max as i64 - reference as i64,
        }
    }

    pub fn write_histogram_csv<W: Write>(&self, w: W) -> Result<(), csv::Error> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["mode", "order", "degree", "count"])?;
        for (d, c) in &self.histogram {
            out.write_record([
                self.mode.to_string(),
                self.order.to_string(),
                d.to_string(),
                c.to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}
